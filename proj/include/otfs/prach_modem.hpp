#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otfs/dd_transform.hpp"
#include "otfs/zc.hpp"

namespace otfs {

enum class Modulation { Otfs, Ofdm };

const char* to_string(Modulation m);
std::optional<Modulation> parse_modulation(const std::string& s);

/// PRACH numerology. Defaults follow the 5G-NR short-preamble setup
/// (N_ZC = 139, q = 1, N_DFT = 2048, M = 1024, P_t = 23 dBm).
struct WaveformParams {
  double delta_f_hz = 15e3;
  std::size_t n_dft = 2048;
  std::size_t m = 1024;  // subcarriers / delay bins
  std::size_t n = 4;     // symbols / Doppler bins
  int n_zc = 139;
  int root = 1;
  std::size_t cp_len = 256;
  Modulation modulation = Modulation::Otfs;
  double tx_power_w = dbm_to_watts(23.0);

  /// Throws InvalidArgument on an inconsistent parameter set.
  void validate() const;

  double sample_rate() const { return delta_f_hz * static_cast<double>(n_dft); }
  double sample_period() const { return 1.0 / sample_rate(); }
  std::size_t frame_length() const { return n * (n_dft + cp_len); }
  /// N_DFT-rate samples per delay bin.
  double samples_per_bin() const { return static_cast<double>(n_dft) / static_cast<double>(m); }
  /// Distance represented by one N_DFT-rate sample: c / (delta_f * N_DFT).
  double distance_quantum() const { return kSpeedOfLight * sample_period(); }
};

struct ReceiverOptions {
  double target_pfa = 1e-3;
  /// Sub-bin refinement of the correlation peak. Off by default: the
  /// standard read-out is the integer peak lag.
  bool refine_peak = false;
  /// Search the peak only over lags a cyclic prefix can absorb,
  /// [0, ceil(cp_len * M / N_DFT)); later lags are wrapped early arrivals.
  /// The full profile is searched when false or when cp_len is 0.
  bool cp_window = true;
};

/// Number of delay bins searched for the peak under `options`.
std::size_t search_bins(const WaveformParams& params, const ReceiverOptions& options);

struct ToaEstimate {
  bool detected = false;
  /// Peak lag rescaled to N_DFT-rate samples. Reported even when the peak
  /// stays below the threshold.
  long sample_delay = 0;
  /// Equals sample_delay unless peak refinement was requested.
  double refined_delay = 0.0;
  double threshold = 0.0;
  CorrelationProfile profile;
};

struct RangingResult {
  double estimated_distance = 0.0;
  double true_distance = 0.0;
  double error = 0.0;  // true - estimated
  bool detected = false;
};

/// ZC along the first n_zc delay bins of every Doppler row; zero elsewhere.
DelayDopplerGrid build_preamble_grid(const ZcSequence& zc, const WaveformParams& params);

/// Time-frequency content sent on air: ISFFT of the preamble grid for OTFS,
/// the grid itself (rows = OFDM symbols) for the OFDM baseline.
TimeFrequencyGrid preamble_time_frequency(const WaveformParams& params);

/// Full transmit chain, scaled to a mean power of params.tx_power_w.
Waveform transmit(const WaveformParams& params);

/// T_TH * m_tot with T_TH = -ln(1 - (1 - pfa)^(1/L)).
/// Throws NotDetectable for an all-zero profile.
double detection_threshold(const CorrelationProfile& profile, double target_pfa);

/// Per-row complex correlations against the ZC reference (delay-domain for
/// OTFS, frequency-domain for OFDM). Lags are delay bins.
std::vector<std::vector<cplx>> correlate_rows(const Waveform& rx, const WaveformParams& params);

/// Maximizes the band-limited interpolation of sum_r |z_r(tau)|^2 on
/// [peak - 1, peak + 1]. Returns the lag in delay bins.
double refine_peak(std::span<const std::vector<cplx>> rows, std::size_t peak_lag);

ToaEstimate receive_and_estimate_toa(const Waveform& rx, const WaveformParams& params,
                                     const ReceiverOptions& options);
ToaEstimate receive_and_estimate_toa(const Waveform& rx, const WaveformParams& params,
                                     double target_pfa);

/// d = c k / (delta_f N_DFT). Throws InvalidArgument for k < 0.
double range_from_toa(double k, double delta_f_hz, std::size_t n_dft);

RangingResult make_ranging_result(const ToaEstimate& toa, const WaveformParams& params,
                                  double true_distance, bool use_refined = false);

}  // namespace otfs
