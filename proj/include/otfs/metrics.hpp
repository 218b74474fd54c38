#pragma once

#include <optional>
#include <span>
#include <vector>

#include "otfs/common.hpp"

namespace otfs {

/// Ranging error at one trajectory point; gamma is 0 for LoS, 1 for NLoS.
struct ErrorSample {
  int trajectory_index = 0;
  double error = 0.0;  // d - d_ext, metres
  LinkState los_tag = LinkState::Los;

  int gamma() const { return los_tag == LinkState::Los ? 0 : 1; }
};

/// sqrt(mean(error^2)). Throws InvalidArgument on an empty set.
double rmse(std::span<const ErrorSample> samples);
double rmse(std::span<const double> errors);

/// sqrt(6 / (4 pi M K (M^2 - 1) P_t) / |h|^2). Relative units.
double rmse_los_bound(std::size_t subcarriers, std::size_t symbols, double tx_power,
                      double channel_gain);

struct CdfPoint {
  double abscissa = 0.0;
  double probability = 0.0;
};

/// Empirical CDF of |error|: one step per distinct value, last step at 1.
std::vector<CdfPoint> error_cdf(std::span<const ErrorSample> samples);
std::vector<CdfPoint> error_cdf(std::span<const double> errors);

/// P(|error| <= x) from a step CDF (right-continuous).
double cdf_at(std::span<const CdfPoint> cdf, double x);

struct SplitRmse {
  std::optional<double> los;   // absent when no LoS sample exists
  std::optional<double> nlos;  // absent when no NLoS sample exists
  double total = 0.0;
};

SplitRmse split_rmse(std::span<const ErrorSample> samples);

}  // namespace otfs
