#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "otfs/channel.hpp"
#include "otfs/prach_modem.hpp"
#include "otfs/uav_scenario.hpp"

namespace otfs {

/// Invalid experiment configuration; `path()` is a JSON pointer to the
/// offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class ChannelSource { Synthetic, TapsFile };
enum class NoiseMode { None, Snr, Absolute };

struct ScenarioConfig {
  double carrier_hz = 1775e6;
  TrajectorySpec trajectory;
  AntennaConfig antenna;
  double g_tmax_db = 10.0;
  /// Fixed antenna tilt; derived from the pitch angle at the trajectory
  /// speed when unset.
  std::optional<double> tilt_deg;
  AirframeConfig airframe;
  bool friis_gains = false;
};

struct ChannelConfig {
  ChannelSource source = ChannelSource::Synthetic;
  std::string taps_path;
  NlosSpec nlos;
  double los_threshold_db = kDefaultLosThresholdDb;
};

struct NoiseConfig {
  NoiseMode mode = NoiseMode::Snr;
  double snr_db = 10.0;
  double noise_figure_db = 7.0;
  /// Defaults to the occupied bandwidth M * delta_f.
  std::optional<double> bandwidth_hz;
};

struct SweepConfig {
  std::vector<double> delta_f_hz;
  std::vector<double> speed_mps;
  std::vector<double> tilt_deg;
};

struct ExperimentConfig {
  WaveformParams waveform;
  ReceiverOptions receiver;
  std::vector<Modulation> schemes{Modulation::Otfs, Modulation::Ofdm};
  ScenarioConfig scenario;
  ChannelConfig channel;
  NoiseConfig noise;
  int trials = 1;
  std::uint64_t seed = 1;
  SweepConfig sweep;

  /// Antenna tilt used for the scenario: the fixed tilt if given, else
  /// the pitch-derived tilt at the trajectory speed.
  double effective_tilt_deg() const;
};

/// Parses and validates; unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
/// Relative tap-file paths are resolved against the config file directory.
ExperimentConfig load_config(const std::string& path);

/// Canonical form: every field present, in a fixed order.
nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

}  // namespace otfs
