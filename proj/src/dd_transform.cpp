#include "otfs/dd_transform.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "otfs/fft.hpp"

namespace otfs {
namespace {

double sum_norm(std::span<const cplx> v) {
  return std::accumulate(v.begin(), v.end(), 0.0,
                         [](double acc, cplx x) { return acc + std::norm(x); });
}

// Transforms every column of a rows x cols row-major matrix.
template <typename Fn>
void transform_columns(std::span<cplx> data, std::size_t rows, std::size_t cols, Fn&& fn) {
  std::vector<cplx> column(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) column[r] = data[r * cols + c];
    fn(std::span<cplx>(column));
    for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = column[r];
  }
}

void scale_all(std::span<cplx> data, double s) {
  for (auto& v : data) v *= s;
}

}  // namespace

DelayDopplerGrid::DelayDopplerGrid(std::size_t m, std::size_t n) : m_(m), n_(n) {
  if (m < 2) throw InvalidArgument("delay-Doppler grid needs M >= 2");
  if (n < 1) throw InvalidArgument("delay-Doppler grid needs N >= 1");
  data_.assign(m * n, cplx{});
}

double DelayDopplerGrid::energy() const { return sum_norm(data_); }

TimeFrequencyGrid::TimeFrequencyGrid(std::size_t n, std::size_t m, double subcarrier_spacing_hz)
    : n_(n), m_(m), delta_f_(subcarrier_spacing_hz) {
  if (m < 1 || n < 1) throw InvalidArgument("time-frequency grid needs M, N >= 1");
  if (!(subcarrier_spacing_hz > 0.0)) throw InvalidArgument("subcarrier spacing must be > 0");
  data_.assign(m * n, cplx{});
}

double TimeFrequencyGrid::energy() const { return sum_norm(data_); }

double Waveform::energy() const { return sum_norm(samples); }

double Waveform::mean_power() const {
  return samples.empty() ? 0.0 : energy() / static_cast<double>(samples.size());
}

TimeFrequencyGrid isfft(const DelayDopplerGrid& dd, double subcarrier_spacing_hz) {
  const std::size_t m = dd.m();
  const std::size_t n = dd.n();
  TimeFrequencyGrid tf(n, m, subcarrier_spacing_hz);
  auto out = tf.data();
  std::copy(dd.data().begin(), dd.data().end(), out.begin());
  // Rows are Doppler bins k: delay l -> subcarrier m with exp(-j2pi ml/M).
  for (std::size_t k = 0; k < n; ++k) fft::forward(out.subspan(k * m, m));
  // Columns: Doppler k -> symbol n with exp(+j2pi nk/N).
  transform_columns(out, n, m, [](std::span<cplx> col) { fft::inverse(col); });
  scale_all(out, 1.0 / std::sqrt(static_cast<double>(m * n)));
  return tf;
}

DelayDopplerGrid sfft(const TimeFrequencyGrid& tf) {
  const std::size_t m = tf.m();
  const std::size_t n = tf.n();
  DelayDopplerGrid dd(m, n);
  auto out = dd.data();
  std::copy(tf.data().begin(), tf.data().end(), out.begin());
  for (std::size_t s = 0; s < n; ++s) fft::inverse(out.subspan(s * m, m));
  transform_columns(out, n, m, [](std::span<cplx> col) { fft::forward(col); });
  scale_all(out, 1.0 / std::sqrt(static_cast<double>(m * n)));
  return dd;
}

std::size_t subcarrier_bin(std::size_t m, std::size_t num_subcarriers, std::size_t n_dft) {
  return (m + n_dft - num_subcarriers / 2) % n_dft;
}

Waveform heisenberg_modulate(const TimeFrequencyGrid& tf, std::size_t n_dft, std::size_t cp_len) {
  const std::size_t m = tf.m();
  if (n_dft < m)
    throw InvalidArgument("n_dft (" + std::to_string(n_dft) + ") smaller than M (" +
                          std::to_string(m) + ")");
  if (cp_len > n_dft) throw InvalidArgument("cyclic prefix longer than the symbol");

  Waveform w;
  w.n_dft = n_dft;
  w.cp_len = cp_len;
  w.sample_rate = tf.subcarrier_spacing() * static_cast<double>(n_dft);
  w.samples.resize(tf.n() * (n_dft + cp_len));

  const double scale = 1.0 / std::sqrt(static_cast<double>(n_dft));
  std::vector<cplx> spectrum(n_dft);
  for (std::size_t s = 0; s < tf.n(); ++s) {
    std::fill(spectrum.begin(), spectrum.end(), cplx{});
    const auto sym = tf.symbol(s);
    for (std::size_t k = 0; k < m; ++k) spectrum[subcarrier_bin(k, m, n_dft)] = sym[k];
    fft::inverse(spectrum);
    auto dst = w.samples.begin() + static_cast<std::ptrdiff_t>(s * (n_dft + cp_len));
    dst = std::transform(spectrum.end() - static_cast<std::ptrdiff_t>(cp_len), spectrum.end(), dst,
                         [scale](cplx v) { return v * scale; });
    std::transform(spectrum.begin(), spectrum.end(), dst, [scale](cplx v) { return v * scale; });
  }
  return w;
}

TimeFrequencyGrid wigner_demodulate(const Waveform& w, std::size_t m, std::size_t n) {
  if (w.n_dft < m) throw InvalidArgument("n_dft smaller than M");
  const std::size_t sym_len = w.symbol_length();
  if (w.samples.size() != n * sym_len)
    throw FramingError("waveform has " + std::to_string(w.samples.size()) + " samples, expected " +
                       std::to_string(n * sym_len) + " for " + std::to_string(n) + " symbols");

  TimeFrequencyGrid tf(n, m, w.sample_rate / static_cast<double>(w.n_dft));
  const double scale = 1.0 / std::sqrt(static_cast<double>(w.n_dft));
  std::vector<cplx> buf(w.n_dft);
  for (std::size_t s = 0; s < n; ++s) {
    auto src = w.samples.begin() + static_cast<std::ptrdiff_t>(s * sym_len + w.cp_len);
    std::copy(src, src + static_cast<std::ptrdiff_t>(w.n_dft), buf.begin());
    fft::forward(buf);
    auto sym = tf.symbol(s);
    for (std::size_t k = 0; k < m; ++k) sym[k] = buf[subcarrier_bin(k, m, w.n_dft)] * scale;
  }
  return tf;
}

namespace reference {

TimeFrequencyGrid isfft(const DelayDopplerGrid& dd, double subcarrier_spacing_hz) {
  const std::size_t m = dd.m();
  const std::size_t n = dd.n();
  TimeFrequencyGrid tf(n, m, subcarrier_spacing_hz);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m * n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t sc = 0; sc < m; ++sc) {
      cplx acc{};
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t k = 0; k < n; ++k) {
          const double ph = 2.0 * kPi *
                            (static_cast<double>((s * k) % n) / static_cast<double>(n) -
                             static_cast<double>((sc * l) % m) / static_cast<double>(m));
          acc += dd.at(l, k) * std::polar(1.0, ph);
        }
      tf.at(s, sc) = acc * norm;
    }
  return tf;
}

DelayDopplerGrid sfft(const TimeFrequencyGrid& tf) {
  const std::size_t m = tf.m();
  const std::size_t n = tf.n();
  DelayDopplerGrid dd(m, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m * n));
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc{};
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t sc = 0; sc < m; ++sc) {
          const double ph = -2.0 * kPi *
                            (static_cast<double>((s * k) % n) / static_cast<double>(n) -
                             static_cast<double>((sc * l) % m) / static_cast<double>(m));
          acc += tf.at(s, sc) * std::polar(1.0, ph);
        }
      dd.at(l, k) = acc * norm;
    }
  return dd;
}

}  // namespace reference

}  // namespace otfs
