#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "otfs/metrics.hpp"

using namespace otfs;

TEST(Rmse, Basics) {
  EXPECT_DOUBLE_EQ(rmse(std::vector<double>{0.0, 0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(rmse(std::vector<double>{-2.5}), 2.5);
  EXPECT_NEAR(rmse(std::vector<double>{1.0, 2.0, 2.0}), 1.7320508075688772, 1e-15);
  EXPECT_THROW(rmse(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(rmse(std::vector<ErrorSample>{}), InvalidArgument);
}

TEST(Rmse, PermutationAndScale) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> e(101);
  for (auto& x : e) x = g(rng);
  const double base = rmse(e);
  std::vector<double> scaled(e.size());
  std::transform(e.begin(), e.end(), scaled.begin(), [](double x) { return -3.5 * x; });
  EXPECT_NEAR(rmse(scaled), 3.5 * base, 1e-12);
  std::shuffle(e.begin(), e.end(), rng);
  EXPECT_NEAR(rmse(e), base, 1e-14);
}

TEST(LosBound, Values) {
  EXPECT_NEAR(rmse_los_bound(2, 1, 1.0, 1.0), 0.28209479177387814, 1e-12);
  const double a = rmse_los_bound(1024, 4, 0.1995, 1e-12);
  const double oracle = std::sqrt(6.0 / (4.0 * kPi * 1024.0 * 4.0 * (1024.0 * 1024.0 - 1.0) * 0.1995) * 1e12);
  EXPECT_NEAR(a / oracle, 1.0, 1e-12);
  EXPECT_NEAR(rmse_los_bound(1024, 4, 0.1995, 4e-12), a / 2.0, 1e-12 * a);
}

TEST(LosBound, Errors) {
  EXPECT_THROW(rmse_los_bound(1, 1, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(rmse_los_bound(2, 0, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(rmse_los_bound(2, 1, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(rmse_los_bound(2, 1, 1.0, 0.0), InvalidArgument);
}

TEST(Cdf, Steps) {
  const auto one = error_cdf(std::vector<double>{1.0, 1.0, -1.0});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one[0].abscissa, 1.0);
  EXPECT_DOUBLE_EQ(one[0].probability, 1.0);
  EXPECT_DOUBLE_EQ(cdf_at(one, 0.999), 0.0);
  EXPECT_DOUBLE_EQ(cdf_at(one, 1.0), 1.0);

  const auto c = error_cdf(std::vector<double>{4.0, -2.0, 1.0, 3.0});
  EXPECT_DOUBLE_EQ(cdf_at(c, 2.5), 0.5);
  EXPECT_DOUBLE_EQ(cdf_at(c, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(cdf_at(c, 4.0), 1.0);
  EXPECT_DOUBLE_EQ(cdf_at(c, 100.0), 1.0);
  EXPECT_THROW(error_cdf(std::vector<double>{}), InvalidArgument);
}

TEST(Cdf, MonotoneAndEndsAtOne) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<double> e(500);
  for (auto& x : e) x = g(rng);
  const auto c = error_cdf(e);
  for (std::size_t i = 1; i < c.size(); ++i) {
    EXPECT_GT(c[i].abscissa, c[i - 1].abscissa);
    EXPECT_GE(c[i].probability, c[i - 1].probability);
  }
  EXPECT_DOUBLE_EQ(c.back().probability, 1.0);
}

TEST(Split, AllLos) {
  const std::vector<ErrorSample> s{{0, 1.0, LinkState::Los}, {1, -3.0, LinkState::Los}};
  const auto r = split_rmse(s);
  ASSERT_TRUE(r.los.has_value());
  EXPECT_FALSE(r.nlos.has_value());
  EXPECT_DOUBLE_EQ(*r.los, r.total);
  EXPECT_EQ(s[0].gamma(), 0);
}

TEST(Split, Mixed) {
  const std::vector<ErrorSample> s{{0, 0.0, LinkState::Los}, {1, 3.0, LinkState::Nlos}};
  const auto r = split_rmse(s);
  EXPECT_DOUBLE_EQ(*r.los, 0.0);
  EXPECT_DOUBLE_EQ(*r.nlos, 3.0);
  EXPECT_NEAR(r.total, std::sqrt(4.5), 1e-15);
  EXPECT_EQ(s[1].gamma(), 1);
  EXPECT_THROW(split_rmse(std::vector<ErrorSample>{}), InvalidArgument);
}

TEST(Split, OrderInvariant) {
  std::vector<ErrorSample> s;
  for (int i = 0; i < 30; ++i) s.push_back({i, 0.37 * i - 4.0, i % 3 == 0 ? LinkState::Nlos : LinkState::Los});
  const auto a = split_rmse(s);
  std::reverse(s.begin(), s.end());
  const auto b = split_rmse(s);
  EXPECT_NEAR(*a.los, *b.los, 1e-14);
  EXPECT_NEAR(*a.nlos, *b.nlos, 1e-14);
  EXPECT_NEAR(a.total, b.total, 1e-14);
}
