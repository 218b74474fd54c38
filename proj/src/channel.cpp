#include "otfs/channel.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <string>

namespace otfs {
namespace {

constexpr int kInterpHalfLength = 32;  // 64 taps
constexpr double kKaiserBeta = 8.0;
constexpr double kIntegerDelayTolerance = 1e-9;  // samples

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

double kaiser(double u, double half_length) {
  const double r = u / half_length;
  if (std::abs(r) >= 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) /
         std::cyl_bessel_i(0.0, kKaiserBeta);
}

// Adds alpha exp(j2pi nu (t_n - tau)) x(t_n - tau) to `out`.
void accumulate_tap(std::span<const cplx> x, double fs, const ChannelTap& tap, std::span<cplx> out) {
  const auto len = static_cast<long>(x.size());
  const double delay_samples = tap.delay_s * fs;
  long shift = static_cast<long>(std::floor(delay_samples));
  double frac = delay_samples - static_cast<double>(shift);
  if (frac > 1.0 - kIntegerDelayTolerance) {
    ++shift;
    frac = 0.0;
  }
  const bool integer = frac < kIntegerDelayTolerance;

  std::array<double, 2 * kInterpHalfLength> kernel{};
  if (!integer) {
    // x(n - D - f) = sum_j x[n - D - j] h(j - f), j in [-31, 32].
    for (int j = -kInterpHalfLength + 1; j <= kInterpHalfLength; ++j) {
      const double u = static_cast<double>(j) - frac;
      kernel[static_cast<std::size_t>(j + kInterpHalfLength - 1)] =
          sinc(u) * kaiser(u, static_cast<double>(kInterpHalfLength));
    }
  }

  const double w = 2.0 * kPi * tap.doppler_hz;
  for (long n = std::max(0L, shift - kInterpHalfLength); n < len; ++n) {
    cplx v{};
    if (integer) {
      const long src = n - shift;
      if (src < 0) continue;
      v = x[static_cast<std::size_t>(src)];
    } else {
      for (int j = -kInterpHalfLength + 1; j <= kInterpHalfLength; ++j) {
        const long src = n - shift - j;
        if (src < 0 || src >= len) continue;
        v += x[static_cast<std::size_t>(src)] * kernel[static_cast<std::size_t>(j + kInterpHalfLength - 1)];
      }
    }
    const double t = static_cast<double>(n) / fs - tap.delay_s;
    out[static_cast<std::size_t>(n)] += tap.gain * std::polar(1.0, w * t) * v;
  }
}

}  // namespace

void ChannelRealization::sort_taps() {
  std::stable_sort(taps.begin(), taps.end(),
                   [](const ChannelTap& a, const ChannelTap& b) { return a.delay_s < b.delay_s; });
}

LinkState classify_taps(const std::vector<ChannelTap>& taps, double threshold_db) {
  if (taps.size() < 2) return LinkState::Los;
  const double first = std::norm(taps.front().gain);
  double strongest = 0.0;
  for (std::size_t i = 1; i < taps.size(); ++i) strongest = std::max(strongest, std::norm(taps[i].gain));
  return strongest >= first * db_to_linear(-threshold_db) ? LinkState::Nlos : LinkState::Los;
}

Waveform apply_channel(const Waveform& w, const ChannelRealization& ch) {
  if (!(w.sample_rate > 0.0)) throw InvalidArgument("waveform sample rate must be > 0");
  const double frame = static_cast<double>(w.samples.size()) / w.sample_rate;
  for (const auto& tap : ch.taps) {
    if (tap.delay_s < 0.0) throw InvalidArgument("negative tap delay");
    if (tap.delay_s >= frame)
      throw InvalidArgument("tap delay " + std::to_string(tap.delay_s) +
                            " s exceeds the frame duration " + std::to_string(frame) + " s");
  }
  Waveform out = w;
  std::fill(out.samples.begin(), out.samples.end(), cplx{});
  for (const auto& tap : ch.taps) accumulate_tap(w.samples, w.sample_rate, tap, out.samples);
  return out;
}

Waveform add_noise(const Waveform& w, double noise_power_w, std::uint64_t seed) {
  if (noise_power_w < 0.0) throw InvalidArgument("noise power must be >= 0");
  Waveform out = w;
  if (noise_power_w == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise_power_w / 2.0));
  for (auto& v : out.samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v += cplx{re, im};
  }
  return out;
}

Waveform add_awgn(const Waveform& w, double snr_db, std::uint64_t seed) {
  if (snr_db == kNoiselessSnr) return w;
  const double p = w.mean_power();
  if (!(p > 0.0)) throw InvalidArgument("cannot set an SNR on a zero-power signal");
  return add_noise(w, p / db_to_linear(snr_db), seed);
}

double thermal_noise_power(double noise_figure_db, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw InvalidArgument("bandwidth must be > 0");
  return kBoltzmann * 290.0 * bandwidth_hz * db_to_linear(noise_figure_db);
}

double received_power(double p_t_w, double wavelength_m, double distance_m, double g_t_db,
                      double g_r_db, bool friis_gains) {
  if (!(distance_m > 0.0)) throw InvalidArgument("distance must be > 0");
  const double fspl = wavelength_m / (4.0 * kPi * distance_m);
  const double g = db_to_linear(g_t_db) * db_to_linear(g_r_db);
  return p_t_w * fspl * fspl * (friis_gains ? g : g * g);
}

double channel_gain(const LinkBudget& lb) { return db_to_linear(lb.path_gain_db()); }

void NlosSpec::validate() const {
  if (count < 0) throw InvalidArgument("NLoS tap count must be >= 0");
  if (excess_delay_min_s <= 0.0 || excess_delay_max_s < excess_delay_min_s)
    throw InvalidArgument("NLoS excess delay range must satisfy 0 < min <= max");
  if (rel_power_max_db < rel_power_min_db) throw InvalidArgument("NLoS power range inverted");
}

ChannelRealization synthesize_scenario_channel(const TrajectoryPoint& point,
                                               const ScenarioChannelParams& params,
                                               std::uint64_t seed) {
  params.nlos.validate();
  const double d = point.distance();
  const double wavelength = kSpeedOfLight / params.carrier_hz;
  const double g_r = params.antenna.omnidirectional
                         ? params.antenna.g_rmax_db
                         : antenna_gain_db(0.0, depression_angle_deg(point), params.tilt_deg, params.antenna);
  const double p_los = received_power(params.tx_power_w, wavelength, d, params.g_t_db, g_r,
                                      params.friis_gains);
  const double p_boresight = received_power(params.tx_power_w, wavelength, d, params.g_t_db,
                                            params.antenna.g_rmax_db, params.friis_gains);

  const Vec3 to_target = point.target - point.position;
  const double radial = d > 0.0 ? point.speed * to_target.x / d : 0.0;
  const double max_doppler = point.speed * params.carrier_hz / kSpeedOfLight;

  ChannelRealization ch;
  ch.trajectory_index = point.index;
  ch.true_distance_m = d;
  ChannelTap los;
  los.delay_s = d / kSpeedOfLight;
  los.doppler_hz = radial * params.carrier_hz / kSpeedOfLight;
  los.gain = std::polar(std::sqrt(p_los / params.tx_power_w),
                        -2.0 * kPi * std::fmod(d / wavelength, 1.0));
  ch.taps.push_back(los);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < params.nlos.count; ++i) {
    ChannelTap tap;
    const double excess = params.nlos.excess_delay_min_s +
                          unit(rng) * (params.nlos.excess_delay_max_s - params.nlos.excess_delay_min_s);
    const double rel_db = params.nlos.rel_power_min_db +
                          unit(rng) * (params.nlos.rel_power_max_db - params.nlos.rel_power_min_db);
    const double phase = 2.0 * kPi * unit(rng);
    const double arrival = 2.0 * kPi * unit(rng);
    tap.delay_s = los.delay_s + excess;
    tap.gain = std::polar(std::sqrt(p_boresight / params.tx_power_w * db_to_linear(rel_db)), phase);
    tap.doppler_hz = max_doppler * std::cos(arrival);
    ch.taps.push_back(tap);
  }
  ch.sort_taps();

  const bool in_cone = params.antenna.omnidirectional || geometric_los(point, params.tilt_deg, params.antenna.first_null_beamwidth());
  ch.los_tag = (in_cone && classify_taps(ch.taps, params.los_threshold_db) == LinkState::Los)
                   ? LinkState::Los
                   : LinkState::Nlos;
  return ch;
}

ChannelRealization synthesize_doppler_multipath(double true_distance_m, double doppler_hz,
                                                const NlosSpec& nlos, std::uint64_t seed) {
  nlos.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  ChannelRealization ch;
  ch.true_distance_m = true_distance_m;
  ChannelTap los;
  los.delay_s = true_distance_m / kSpeedOfLight;
  los.doppler_hz = doppler_hz;
  los.gain = std::polar(1.0, 2.0 * kPi * unit(rng));
  ch.taps.push_back(los);
  for (int i = 0; i < nlos.count; ++i) {
    ChannelTap tap;
    const double excess =
        nlos.excess_delay_min_s + unit(rng) * (nlos.excess_delay_max_s - nlos.excess_delay_min_s);
    const double rel_db =
        nlos.rel_power_min_db + unit(rng) * (nlos.rel_power_max_db - nlos.rel_power_min_db);
    const double phase = 2.0 * kPi * unit(rng);
    const double arrival = 2.0 * kPi * unit(rng);
    tap.delay_s = los.delay_s + excess;
    tap.gain = std::polar(std::sqrt(db_to_linear(rel_db)), phase);
    tap.doppler_hz = doppler_hz * std::cos(arrival);
    ch.taps.push_back(tap);
  }
  ch.sort_taps();
  ch.los_tag = classify_taps(ch.taps);
  return ch;
}

}  // namespace otfs
