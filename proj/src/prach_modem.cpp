#include "otfs/prach_modem.hpp"

#include <algorithm>
#include <limits>

#include "otfs/fft.hpp"

namespace otfs {

const char* to_string(Modulation m) { return m == Modulation::Otfs ? "OTFS" : "OFDM"; }

std::optional<Modulation> parse_modulation(const std::string& s) {
  if (s == "OTFS") return Modulation::Otfs;
  if (s == "OFDM") return Modulation::Ofdm;
  return std::nullopt;
}

void WaveformParams::validate() const {
  if (!(delta_f_hz > 0.0)) throw InvalidArgument("delta_f must be > 0");
  if (m < 2) throw InvalidArgument("need at least 2 subcarriers");
  if (n < 1) throw InvalidArgument("need at least 1 symbol");
  if (n_dft < m) throw InvalidArgument("n_dft must be >= M");
  if (cp_len > n_dft) throw InvalidArgument("cp_len must not exceed n_dft");
  if (n_zc < 3) throw InvalidArgument("n_zc must be >= 3");
  if (static_cast<std::size_t>(n_zc) > m) throw InvalidArgument("n_zc must not exceed M");
  if (!(tx_power_w > 0.0)) throw InvalidArgument("tx power must be > 0");
}

DelayDopplerGrid build_preamble_grid(const ZcSequence& zc, const WaveformParams& params) {
  if (static_cast<std::size_t>(zc.length) > params.m)
    throw InvalidArgument("ZC length " + std::to_string(zc.length) + " exceeds M = " +
                          std::to_string(params.m));
  DelayDopplerGrid grid(params.m, params.n);
  for (std::size_t k = 0; k < params.n; ++k) {
    auto row = grid.doppler_row(k);
    std::copy(zc.samples.begin(), zc.samples.end(), row.begin());
  }
  return grid;
}

TimeFrequencyGrid preamble_time_frequency(const WaveformParams& params) {
  params.validate();
  const auto zc = generate_zc(params.root, params.n_zc);
  const auto grid = build_preamble_grid(zc, params);
  if (params.modulation == Modulation::Otfs) return isfft(grid, params.delta_f_hz);

  TimeFrequencyGrid tf(params.n, params.m, params.delta_f_hz);
  for (std::size_t s = 0; s < params.n; ++s)
    for (std::size_t sc = 0; sc < params.m; ++sc) tf.at(s, sc) = grid.at(sc, s);
  return tf;
}

Waveform transmit(const WaveformParams& params) {
  auto w = heisenberg_modulate(preamble_time_frequency(params), params.n_dft, params.cp_len);
  const double scale = std::sqrt(params.tx_power_w / w.mean_power());
  for (auto& v : w.samples) v *= scale;
  return w;
}

double detection_threshold(const CorrelationProfile& profile, double target_pfa) {
  if (!(target_pfa > 0.0 && target_pfa < 1.0))
    throw InvalidArgument("target false-alarm probability must lie in (0, 1)");
  if (profile.values.empty() || !(profile.mean_power > 0.0))
    throw NotDetectable("correlation profile carries no power");
  const double bins = static_cast<double>(profile.values.size());
  // Largest of L i.i.d. unit-mean exponential bins stays below T_TH with
  // probability 1 - pfa: (1 - exp(-T_TH))^L = 1 - pfa.
  const double t_th = -std::log(-std::expm1(std::log1p(-target_pfa) / bins));
  return t_th * profile.mean_power;
}

std::vector<std::vector<cplx>> correlate_rows(const Waveform& rx, const WaveformParams& params) {
  params.validate();
  if (rx.n_dft != params.n_dft || rx.cp_len != params.cp_len)
    throw FramingError("received waveform numerology does not match the receiver");
  const auto tf = wigner_demodulate(rx, params.m, params.n);
  const auto zc = generate_zc(params.root, params.n_zc);

  std::vector<cplx> ref(params.m, cplx{});
  std::copy(zc.samples.begin(), zc.samples.end(), ref.begin());

  std::vector<std::vector<cplx>> rows;
  rows.reserve(params.n);
  if (params.modulation == Modulation::Otfs) {
    const auto dd = sfft(tf);
    std::vector<cplx> ref_spectrum = ref;
    fft::forward(ref_spectrum);
    std::vector<cplx> row(params.m);
    for (std::size_t k = 0; k < params.n; ++k) {
      const auto src = dd.doppler_row(k);
      std::copy(src.begin(), src.end(), row.begin());
      fft::forward(row);
      rows.push_back(spectral_cross_correlation(row, ref_spectrum));
    }
  } else {
    // Standard PRACH detection: de-spread each symbol in frequency with the
    // conjugate root sequence and return to the lag domain.
    for (std::size_t s = 0; s < params.n; ++s) rows.push_back(spectral_cross_correlation(tf.symbol(s), ref));
  }
  return rows;
}

double refine_peak(std::span<const std::vector<cplx>> rows, std::size_t peak_lag) {
  if (rows.empty()) throw InvalidArgument("no correlation rows");
  const std::size_t len = rows.front().size();
  std::vector<std::vector<cplx>> spectra(rows.begin(), rows.end());
  for (auto& s : spectra) fft::forward(s);

  // sum_r |(1/L) sum_m Z_r[m] exp(j 2 pi m tau / L)|^2, m in subcarrier order.
  auto power_at = [&](double tau) {
    const cplx step = std::polar(1.0, 2.0 * kPi * tau / static_cast<double>(len));
    double total = 0.0;
    for (const auto& z : spectra) {
      cplx acc{};
      cplx ph{1.0, 0.0};
      for (std::size_t m = 0; m < len; ++m) {
        acc += z[m] * ph;
        ph *= step;
      }
      total += std::norm(acc);
    }
    return total;
  };

  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = static_cast<double>(peak_lag) - 1.0;
  double hi = static_cast<double>(peak_lag) + 1.0;
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = power_at(x1);
  double f2 = power_at(x2);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = power_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = power_at(x1);
    }
  }
  return 0.5 * (lo + hi);
}

std::size_t search_bins(const WaveformParams& params, const ReceiverOptions& options) {
  if (!options.cp_window || params.cp_len == 0) return params.m;
  const std::size_t bins = (params.cp_len * params.m + params.n_dft - 1) / params.n_dft;
  return std::clamp<std::size_t>(bins, 1, params.m);
}

ToaEstimate receive_and_estimate_toa(const Waveform& rx, const WaveformParams& params,
                                     const ReceiverOptions& options) {
  const auto rows = correlate_rows(rx, params);
  ToaEstimate est;
  est.profile = combine_noncoherent(rows);
  const std::size_t window = search_bins(params, options);
  const auto& v = est.profile.values;
  est.profile.peak_lag = static_cast<std::size_t>(
      std::distance(v.begin(), std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(window))));
  try {
    est.threshold = detection_threshold(est.profile, options.target_pfa);
    est.detected = est.profile.values[est.profile.peak_lag] >= est.threshold;
  } catch (const NotDetectable&) {
    est.threshold = std::numeric_limits<double>::infinity();
    est.detected = false;
  }
  const double spb = params.samples_per_bin();
  est.sample_delay = std::lround(static_cast<double>(est.profile.peak_lag) * spb);
  est.refined_delay = static_cast<double>(est.sample_delay);
  if (options.refine_peak && est.profile.mean_power > 0.0)
    est.refined_delay = refine_peak(rows, est.profile.peak_lag) * spb;
  return est;
}

ToaEstimate receive_and_estimate_toa(const Waveform& rx, const WaveformParams& params,
                                     double target_pfa) {
  ReceiverOptions options;
  options.target_pfa = target_pfa;
  return receive_and_estimate_toa(rx, params, options);
}

double range_from_toa(double k, double delta_f_hz, std::size_t n_dft) {
  if (k < 0.0) throw InvalidArgument("sample delay must be >= 0");
  if (!(delta_f_hz > 0.0) || n_dft == 0) throw InvalidArgument("invalid numerology");
  return kSpeedOfLight * k / (delta_f_hz * static_cast<double>(n_dft));
}

RangingResult make_ranging_result(const ToaEstimate& toa, const WaveformParams& params,
                                  double true_distance, bool use_refined) {
  RangingResult r;
  const double k = use_refined ? std::max(toa.refined_delay, 0.0) : static_cast<double>(toa.sample_delay);
  r.estimated_distance = range_from_toa(k, params.delta_f_hz, params.n_dft);
  r.true_distance = true_distance;
  r.error = true_distance - r.estimated_distance;
  r.detected = toa.detected;
  return r;
}

}  // namespace otfs
