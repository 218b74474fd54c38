#include "otfs/metrics.hpp"

#include <algorithm>

namespace otfs {

double rmse(std::span<const double> errors) {
  if (errors.empty()) throw InvalidArgument("RMSE of an empty sample set");
  double acc = 0.0;
  for (double e : errors) acc += e * e;
  return std::sqrt(acc / static_cast<double>(errors.size()));
}

double rmse(std::span<const ErrorSample> samples) {
  if (samples.empty()) throw InvalidArgument("RMSE of an empty sample set");
  double acc = 0.0;
  for (const auto& s : samples) acc += s.error * s.error;
  return std::sqrt(acc / static_cast<double>(samples.size()));
}

double rmse_los_bound(std::size_t subcarriers, std::size_t symbols, double tx_power,
                      double channel_gain) {
  if (subcarriers < 2) throw InvalidArgument("LoS bound needs M >= 2");
  if (symbols < 1) throw InvalidArgument("LoS bound needs K >= 1");
  if (!(tx_power > 0.0) || !(channel_gain > 0.0))
    throw InvalidArgument("LoS bound needs positive power and channel gain");
  const double m = static_cast<double>(subcarriers);
  const double k = static_cast<double>(symbols);
  return std::sqrt(6.0 / (4.0 * kPi * m * k * (m * m - 1.0) * tx_power) / channel_gain);
}

std::vector<CdfPoint> error_cdf(std::span<const double> errors) {
  if (errors.empty()) throw InvalidArgument("CDF of an empty sample set");
  std::vector<double> mags(errors.size());
  std::transform(errors.begin(), errors.end(), mags.begin(), [](double e) { return std::abs(e); });
  std::sort(mags.begin(), mags.end());
  std::vector<CdfPoint> cdf;
  const double total = static_cast<double>(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;
    cdf.push_back({mags[i], static_cast<double>(i + 1) / total});
  }
  cdf.back().probability = 1.0;
  return cdf;
}

std::vector<CdfPoint> error_cdf(std::span<const ErrorSample> samples) {
  std::vector<double> errors(samples.size());
  std::transform(samples.begin(), samples.end(), errors.begin(),
                 [](const ErrorSample& s) { return s.error; });
  return error_cdf(errors);
}

double cdf_at(std::span<const CdfPoint> cdf, double x) {
  // Last step whose abscissa is <= x.
  auto it = std::upper_bound(cdf.begin(), cdf.end(), x,
                             [](double v, const CdfPoint& p) { return v < p.abscissa; });
  return it == cdf.begin() ? 0.0 : std::prev(it)->probability;
}

SplitRmse split_rmse(std::span<const ErrorSample> samples) {
  if (samples.empty()) throw InvalidArgument("RMSE of an empty sample set");
  std::vector<double> los;
  std::vector<double> nlos;
  for (const auto& s : samples) (s.gamma() == 0 ? los : nlos).push_back(s.error);
  SplitRmse out;
  if (!los.empty()) out.los = rmse(los);
  if (!nlos.empty()) out.nlos = rmse(nlos);
  out.total = rmse(samples);
  return out;
}

}  // namespace otfs
