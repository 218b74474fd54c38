#pragma once

#include <span>
#include <vector>

#include "otfs/common.hpp"

namespace otfs {

/// Zadoff-Chu root sequence a_q(n) = exp(-j 2 pi q n(n+1)/2 / N_ZC).
struct ZcSequence {
  int root = 1;
  int length = 0;
  std::vector<cplx> samples;
  /// False when N_ZC is not prime; the zero-autocorrelation property is then
  /// not guaranteed. Such sequences are still generated.
  bool prime_length = true;
};

/// Throws InvalidArgument for n_zc < 3, root outside [1, n_zc) or
/// gcd(root, n_zc) != 1.
ZcSequence generate_zc(int root, int n_zc);

bool is_prime(int n);

/// Power per lag of a circular cross-correlation.
struct CorrelationProfile {
  std::vector<double> values;
  std::size_t peak_lag = 0;  // argmax, smallest lag on ties
  double mean_power = 0.0;
};

/// Builds peak/mean bookkeeping around an existing power sequence.
CorrelationProfile make_profile(std::vector<double> values);

/// z(l) = sum_n y(n) conj(ref((n - l) mod L)), evaluated with FFTs.
///
/// A copy of `ref` delayed by d samples peaks at l = d.
std::vector<cplx> circular_cross_correlation(std::span<const cplx> y, std::span<const cplx> ref);

/// Same lag convention, computed from the two spectra:
/// z(l) = (1/L) sum_m Y[m] conj(R[m]) exp(+j 2 pi m l / L).
std::vector<cplx> spectral_cross_correlation(std::span<const cplx> y_spectrum,
                                             std::span<const cplx> ref_spectrum);

/// |z(l)|^2 of circular_cross_correlation.
CorrelationProfile circular_correlation(std::span<const cplx> y, std::span<const cplx> ref);

/// Non-coherent combination: values[l] = sum_r |rows[r][l]|^2.
CorrelationProfile combine_noncoherent(std::span<const std::vector<cplx>> rows);

namespace reference {

/// Direct O(L^2) evaluation of circular_cross_correlation.
std::vector<cplx> circular_cross_correlation(std::span<const cplx> y, std::span<const cplx> ref);

}  // namespace reference

}  // namespace otfs
