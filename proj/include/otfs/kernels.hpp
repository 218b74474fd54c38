#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "otfs/channel.hpp"
#include "otfs/prach_modem.hpp"

namespace otfs {

/// One (point, trial, scheme) outcome.
struct TrialRecord {
  Modulation scheme = Modulation::Otfs;
  double delta_f_hz = 0.0;
  double speed_mps = 0.0;
  double tilt_deg = 0.0;
  int point_index = 0;
  int trial = 0;
  LinkState los_tag = LinkState::Los;
  double true_d_m = 0.0;
  double est_d_m = 0.0;
  double error_m = 0.0;
  bool detected = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct NoiseSetting {
  enum class Kind { None, Snr, Absolute } kind = Kind::Snr;
  double snr_db = 10.0;
  double power_w = 0.0;  // Absolute only
};

/// Everything a batch of Monte Carlo units needs, prepared once and shared
/// read-only between threads.
struct PreparedRun {
  std::vector<WaveformParams> schemes;  // one entry per scheme, modulation set
  std::vector<Waveform> tx;             // transmit waveform per scheme
  ReceiverOptions receiver;
  NoiseSetting noise;

  /// Synthetic source: channels are drawn per (point, trial).
  std::vector<TrajectoryPoint> points;
  ScenarioChannelParams scenario;
  /// File source: fixed realizations, reused for every trial.
  std::vector<ChannelRealization> fixed_channels;

  int trials = 1;
  std::uint64_t seed = 1;
  double speed_mps = 0.0;

  std::size_t point_count() const {
    return fixed_channels.empty() ? points.size() : fixed_channels.size();
  }
  std::size_t unit_count() const { return point_count() * static_cast<std::size_t>(trials); }

  /// Channel seen by unit (point, trial); identical for every scheme.
  ChannelRealization channel(std::size_t point, int trial) const;
};

PreparedRun prepare_run(std::vector<WaveformParams> schemes, const ReceiverOptions& receiver);

/// Appends one record per scheme for the given unit, in scheme order.
void run_unit(const PreparedRun& run, std::size_t point, int trial, TrialRecord* out);

/// OpenMP over (point, trial) units; records ordered by point, trial, scheme
/// independent of the thread count. threads <= 0 uses the OpenMP default.
std::vector<TrialRecord> run_trials(const PreparedRun& run, int threads);

namespace reference {
/// Single-threaded loop with the same ordering as otfs::run_trials.
std::vector<TrialRecord> run_trials(const PreparedRun& run);
}  // namespace reference

}  // namespace otfs
