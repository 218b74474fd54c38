#include "otfs/zc.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "otfs/fft.hpp"

namespace otfs {

const char* to_string(LinkState s) { return s == LinkState::Los ? "LoS" : "NLoS"; }

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ZcSequence generate_zc(int root, int n_zc) {
  if (n_zc < 3) throw InvalidArgument("ZC length must be >= 3, got " + std::to_string(n_zc));
  if (root < 1 || root >= n_zc)
    throw InvalidArgument("ZC root must lie in [1, " + std::to_string(n_zc - 1) + "]");
  if (std::gcd(root, n_zc) != 1)
    throw InvalidArgument("ZC root " + std::to_string(root) + " is not coprime with " +
                          std::to_string(n_zc));

  ZcSequence zc;
  zc.root = root;
  zc.length = n_zc;
  zc.prime_length = is_prime(n_zc);
  zc.samples.resize(static_cast<std::size_t>(n_zc));
  // n(n+1)/2 is an integer; reduce q*n(n+1)/2 modulo N_ZC exactly so the
  // phase argument stays small for long sequences.
  const auto len = static_cast<long long>(n_zc);
  for (long long n = 0; n < len; ++n) {
    const long long tri = (n * (n + 1) / 2) % len;
    const long long e = (static_cast<long long>(root) * tri) % len;
    const double phase = -2.0 * kPi * static_cast<double>(e) / static_cast<double>(len);
    zc.samples[static_cast<std::size_t>(n)] = std::polar(1.0, phase);
  }
  return zc;
}

CorrelationProfile make_profile(std::vector<double> values) {
  CorrelationProfile p;
  p.values = std::move(values);
  if (p.values.empty()) return p;
  // max_element returns the first maximum, which is the smallest lag.
  p.peak_lag = static_cast<std::size_t>(
      std::distance(p.values.begin(), std::max_element(p.values.begin(), p.values.end())));
  p.mean_power = std::accumulate(p.values.begin(), p.values.end(), 0.0) /
                 static_cast<double>(p.values.size());
  return p;
}

std::vector<cplx> spectral_cross_correlation(std::span<const cplx> y_spectrum,
                                             std::span<const cplx> ref_spectrum) {
  if (y_spectrum.size() != ref_spectrum.size())
    throw InvalidArgument("correlation length mismatch");
  const std::size_t len = y_spectrum.size();
  std::vector<cplx> z(len);
  for (std::size_t m = 0; m < len; ++m) z[m] = y_spectrum[m] * std::conj(ref_spectrum[m]);
  fft::inverse(z);
  const double scale = 1.0 / static_cast<double>(len);
  for (auto& v : z) v *= scale;
  return z;
}

std::vector<cplx> circular_cross_correlation(std::span<const cplx> y, std::span<const cplx> ref) {
  if (y.size() != ref.size()) throw InvalidArgument("correlation length mismatch");
  if (y.empty()) throw InvalidArgument("correlation of empty sequences");
  std::vector<cplx> ys(y.begin(), y.end());
  std::vector<cplx> rs(ref.begin(), ref.end());
  fft::forward(ys);
  fft::forward(rs);
  return spectral_cross_correlation(ys, rs);
}

CorrelationProfile circular_correlation(std::span<const cplx> y, std::span<const cplx> ref) {
  const auto z = circular_cross_correlation(y, ref);
  std::vector<double> power(z.size());
  std::transform(z.begin(), z.end(), power.begin(), [](cplx v) { return std::norm(v); });
  return make_profile(std::move(power));
}

CorrelationProfile combine_noncoherent(std::span<const std::vector<cplx>> rows) {
  if (rows.empty()) throw InvalidArgument("no correlation rows to combine");
  const std::size_t len = rows.front().size();
  std::vector<double> power(len, 0.0);
  for (const auto& row : rows) {
    if (row.size() != len) throw InvalidArgument("correlation rows differ in length");
    for (std::size_t l = 0; l < len; ++l) power[l] += std::norm(row[l]);
  }
  return make_profile(std::move(power));
}

namespace reference {

std::vector<cplx> circular_cross_correlation(std::span<const cplx> y, std::span<const cplx> ref) {
  if (y.size() != ref.size()) throw InvalidArgument("correlation length mismatch");
  if (y.empty()) throw InvalidArgument("correlation of empty sequences");
  const std::size_t len = y.size();
  std::vector<cplx> z(len);
  for (std::size_t l = 0; l < len; ++l) {
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < len; ++n) acc += y[n] * std::conj(ref[(n + len - l) % len]);
    z[l] = acc;
  }
  return z;
}

}  // namespace reference

}  // namespace otfs
