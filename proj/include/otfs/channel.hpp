#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "otfs/dd_transform.hpp"
#include "otfs/uav_scenario.hpp"

namespace otfs {

/// One delay-Doppler path: alpha exp(j 2 pi nu (t - tau)) x(t - tau).
struct ChannelTap {
  cplx gain{1.0, 0.0};
  double delay_s = 0.0;
  double doppler_hz = 0.0;
};

struct ChannelRealization {
  std::vector<ChannelTap> taps;  // ascending delay, tap 0 is the shortest path
  LinkState los_tag = LinkState::Los;
  int trajectory_index = 0;
  double true_distance_m = 0.0;

  void sort_taps();
};

inline constexpr double kDefaultLosThresholdDb = 6.0;

/// NLoS when the strongest non-first tap is within threshold_db of tap 0.
LinkState classify_taps(const std::vector<ChannelTap>& taps,
                        double threshold_db = kDefaultLosThresholdDb);

/// Applies the tapped delay-Doppler channel at the sample instants of `w`.
/// Fractional delays use a 64-tap Kaiser-windowed sinc; integer delays are
/// exact shifts. Output has the input length (tail truncated).
Waveform apply_channel(const Waveform& w, const ChannelRealization& ch);

/// Positive infinity disables noise.
inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();

/// Circularly-symmetric complex Gaussian noise at `snr_db` relative to the
/// measured mean power of `w`. Throws InvalidArgument for a zero-power input.
Waveform add_awgn(const Waveform& w, double snr_db, std::uint64_t seed);

/// Same, with an absolute noise power (W per complex sample).
Waveform add_noise(const Waveform& w, double noise_power_w, std::uint64_t seed);

/// k T B F with T = 290 K.
double thermal_noise_power(double noise_figure_db, double bandwidth_hz);

/// P_r = P_t (lambda / (4 pi d))^2 (G_t G_r)^2 with linear gains, as written
/// for the UAV link; friis_gains = true uses the conventional (G_t G_r).
double received_power(double p_t_w, double wavelength_m, double distance_m, double g_t_db,
                      double g_r_db, bool friis_gains = false);

struct LinkBudget {
  double p_t_dbm = 23.0;
  double p_r_dbm = 0.0;
  double g_tmax_db = 10.0;
  double g_rmax_db = 10.0;
  double extra_loss_db = 0.0;  // LS

  /// Pg = P_r - P_t - G_rmax - G_tmax + LS.
  double path_gain_db() const { return p_r_dbm - p_t_dbm - g_rmax_db - g_tmax_db + extra_loss_db; }
};

/// |h|^2 = 10^(Pg / 10).
double channel_gain(const LinkBudget& lb);

/// Random NLoS taps added on top of the direct path.
struct NlosSpec {
  int count = 0;
  double excess_delay_min_s = 20e-9;
  double excess_delay_max_s = 200e-9;
  double rel_power_min_db = -12.0;
  double rel_power_max_db = -3.0;

  void validate() const;
};

struct ScenarioChannelParams {
  double carrier_hz = 1775e6;
  double tx_power_w = dbm_to_watts(23.0);
  double g_t_db = 10.0;  // omnidirectional UE antenna
  AntennaConfig antenna;
  double tilt_deg = 0.0;
  bool friis_gains = false;
  NlosSpec nlos;
  double los_threshold_db = kDefaultLosThresholdDb;
};

/// Geometry-driven stand-in for a ray-traced channel. The direct path takes
/// its delay from the UAV-target distance, its power from the link budget
/// with the tilted antenna pattern, and its Doppler from the UAV velocity.
/// NLoS paths are drawn relative to the boresight-gain direct-path power.
/// The realization is tagged NLoS if it fails the tap-power test or the
/// target lies outside the first-null cone.
ChannelRealization synthesize_scenario_channel(const TrajectoryPoint& point,
                                               const ScenarioChannelParams& params,
                                               std::uint64_t seed);

/// Unit-power direct path at `true_distance_m` with Doppler `doppler_hz`,
/// plus NLoS taps whose Doppler is doppler_hz * cos(phi), phi uniform.
ChannelRealization synthesize_doppler_multipath(double true_distance_m, double doppler_hz,
                                                const NlosSpec& nlos, std::uint64_t seed);

/// Tap CSV: header `point_index,true_distance_m,gain_db,phase_rad,delay_s,doppler_hz`,
/// one row per tap. Realizations come back ordered by point index.
std::vector<ChannelRealization> load_taps(const std::string& path,
                                          double los_threshold_db = kDefaultLosThresholdDb);
std::vector<ChannelRealization> read_taps(std::istream& in,
                                          double los_threshold_db = kDefaultLosThresholdDb);
void save_taps(const std::string& path, const std::vector<ChannelRealization>& realizations);
void write_taps(std::ostream& out, const std::vector<ChannelRealization>& realizations);

}  // namespace otfs
