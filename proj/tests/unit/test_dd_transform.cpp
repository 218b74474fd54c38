#include <gtest/gtest.h>

#include <random>

#include "otfs/dd_transform.hpp"

using namespace otfs;

namespace {

DelayDopplerGrid random_dd(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DelayDopplerGrid dd(m, n);
  for (auto& x : dd.data()) x = {g(rng), g(rng)};
  return dd;
}

TimeFrequencyGrid random_tf(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  TimeFrequencyGrid tf(n, m, 15e3);
  for (auto& x : tf.data()) x = {g(rng), g(rng)};
  return tf;
}

template <typename A, typename B>
double max_diff(const A& a, const B& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double max_abs(std::span<const cplx> a) {
  double worst = 0.0;
  for (const auto& x : a) worst = std::max(worst, std::abs(x));
  return worst;
}

}  // namespace

TEST(Grids, Dimensions) {
  EXPECT_THROW(DelayDopplerGrid(1, 4), InvalidArgument);
  EXPECT_THROW(DelayDopplerGrid(4, 0), InvalidArgument);
  DelayDopplerGrid dd(16, 4);
  EXPECT_EQ(dd.data().size(), 64u);
  dd.at(3, 2) = {1.0, 0.0};
  EXPECT_EQ(dd.doppler_row(2)[3], cplx(1.0, 0.0));
  EXPECT_DOUBLE_EQ(dd.energy(), 1.0);
}

TEST(Grids, CriticalSampling) {
  TimeFrequencyGrid tf(4, 16, 30e3);
  EXPECT_NEAR(tf.symbol_interval() * tf.subcarrier_spacing(), 1.0, 1e-12);
}

TEST(Isfft, DeltaGivesConstant) {
  DelayDopplerGrid dd(4, 4);
  dd.at(0, 0) = 1.0;
  const auto tf = isfft(dd, 15e3);
  for (const auto& x : tf.data()) EXPECT_NEAR(std::abs(x - cplx(0.25, 0.0)), 0.0, 1e-15);
}

TEST(Sfft, ConstantGivesDelta) {
  TimeFrequencyGrid tf(4, 4, 15e3);
  const cplx c(0.7, -0.2);
  for (auto& x : tf.data()) x = c;
  const auto dd = sfft(tf);
  EXPECT_NEAR(std::abs(dd.at(0, 0) - 4.0 * c), 0.0, 1e-14);
  double rest = 0.0;
  for (std::size_t i = 1; i < dd.data().size(); ++i) rest += std::abs(dd.data()[i]);
  EXPECT_NEAR(rest, 0.0, 1e-13);
}

TEST(Isfft, MatchesDirectSum) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{4, 4}, {16, 8}, {12, 3}, {7, 5}}) {
    const auto dd = random_dd(m, n, m * 31 + n);
    const auto fast = isfft(dd, 15e3);
    const auto slow = reference::isfft(dd, 15e3);
    EXPECT_LE(max_diff(fast.data(), slow.data()), 1e-12 * max_abs(slow.data()));
    const auto back = sfft(fast);
    const auto back_slow = reference::sfft(slow);
    EXPECT_LE(max_diff(back.data(), back_slow.data()), 1e-12 * max_abs(back_slow.data()));
  }
}

TEST(Isfft, DirectSumSignConvention) {
  // One nonzero symbol at (l, k) = (1, 1) on a 4x4 grid:
  // X[n, m] = 1/4 exp(j 2 pi (n/4 - m/4)).
  DelayDopplerGrid dd(4, 4);
  dd.at(1, 1) = 1.0;
  const auto tf = isfft(dd, 15e3);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t m = 0; m < 4; ++m) {
      const cplx expected = 0.25 * std::polar(1.0, 2.0 * kPi * (static_cast<double>(n) - static_cast<double>(m)) / 4.0);
      EXPECT_NEAR(std::abs(tf.at(n, m) - expected), 0.0, 1e-15);
    }
}

TEST(Isfft, RoundTripAndParseval) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{16, 8}, {64, 16}, {1024, 4}, {1024, 16}}) {
    const auto dd = random_dd(m, n, m + n);
    const auto tf = isfft(dd, 15e3);
    EXPECT_NEAR(tf.energy() / dd.energy(), 1.0, 1e-10);
    const auto back = sfft(tf);
    EXPECT_LE(max_diff(back.data(), dd.data()), 1e-10 * max_abs(dd.data()));
  }
}

TEST(Sfft, RoundTripOtherWay) {
  const auto tf = random_tf(8, 16, 3);
  const auto again = isfft(sfft(tf), 15e3);
  EXPECT_LE(max_diff(again.data(), tf.data()), 1e-10 * max_abs(tf.data()));
  EXPECT_NEAR(sfft(tf).energy() / tf.energy(), 1.0, 1e-10);
}

TEST(Sfft, NotSelfInverse) {
  const auto tf = random_tf(4, 4, 9);
  const auto once = sfft(tf);
  TimeFrequencyGrid as_tf(4, 4, 15e3);
  std::copy(once.data().begin(), once.data().end(), as_tf.data().begin());
  const auto twice = sfft(as_tf);
  EXPECT_GT(max_diff(twice.data(), tf.data()), 1e-3);
}

TEST(Isfft, Linearity) {
  const auto a = random_dd(16, 8, 1);
  const auto b = random_dd(16, 8, 2);
  const cplx alpha(0.3, -1.1), beta(-2.0, 0.5);
  DelayDopplerGrid mix(16, 8);
  for (std::size_t i = 0; i < mix.data().size(); ++i) mix.data()[i] = alpha * a.data()[i] + beta * b.data()[i];
  const auto ta = isfft(a, 15e3), tb = isfft(b, 15e3), tm = isfft(mix, 15e3);
  for (std::size_t i = 0; i < tm.data().size(); ++i)
    EXPECT_NEAR(std::abs(tm.data()[i] - (alpha * ta.data()[i] + beta * tb.data()[i])), 0.0, 1e-10);
}

TEST(SubcarrierMapping, CentredAndDistinct) {
  std::vector<bool> used(32, false);
  for (std::size_t m = 0; m < 16; ++m) {
    const auto bin = subcarrier_bin(m, 16, 32);
    ASSERT_LT(bin, 32u);
    EXPECT_FALSE(used[bin]);
    used[bin] = true;
  }
  EXPECT_EQ(subcarrier_bin(8, 16, 32), 0u);   // DC
  EXPECT_EQ(subcarrier_bin(0, 16, 32), 24u);  // most negative frequency
  EXPECT_EQ(subcarrier_bin(0, 1, 8), 0u);
}

TEST(Heisenberg, SingleDcSubcarrier) {
  TimeFrequencyGrid tf(1, 1, 15e3);
  tf.at(0, 0) = 1.0;
  const auto w = heisenberg_modulate(tf, 8, 0);
  ASSERT_EQ(w.samples.size(), 8u);
  for (const auto& s : w.samples) EXPECT_NEAR(std::abs(s - w.samples[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.samples[0]), 1.0 / std::sqrt(8.0), 1e-15);
}

TEST(Heisenberg, FramingAndErrors) {
  const auto tf = random_tf(4, 16, 4);
  const auto w = heisenberg_modulate(tf, 32, 8);
  EXPECT_EQ(w.samples.size(), 160u);
  EXPECT_DOUBLE_EQ(w.sample_rate, 15e3 * 32);
  EXPECT_EQ(w.symbol_length(), 40u);
  EXPECT_THROW(heisenberg_modulate(tf, 8, 0), InvalidArgument);
  // Cyclic prefix copies the symbol tail.
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(w.samples[i], w.samples[32 + i]);
}

TEST(Heisenberg, ModemRoundTrip) {
  const auto tf = random_tf(4, 16, 5);
  const auto back = wigner_demodulate(heisenberg_modulate(tf, 32, 8), 16, 4);
  EXPECT_LE(max_diff(back.data(), tf.data()), 1e-9);
  const auto big = random_tf(4, 1024, 6);
  const auto big_back = wigner_demodulate(heisenberg_modulate(big, 2048, 256), 1024, 4);
  EXPECT_LE(max_diff(big_back.data(), big.data()), 1e-9);
}

TEST(Heisenberg, EnergyPreserved) {
  const auto tf = random_tf(4, 16, 7);
  const auto w = heisenberg_modulate(tf, 32, 0);
  EXPECT_NEAR(w.energy() / tf.energy(), 1.0, 1e-12);
}

TEST(Wigner, FramingError) {
  Waveform w;
  w.samples.resize(159);
  w.n_dft = 32;
  w.cp_len = 8;
  w.sample_rate = 15e3 * 32;
  EXPECT_THROW(wigner_demodulate(w, 16, 4), FramingError);
}

TEST(Wigner, ZeroInZeroOut) {
  Waveform w;
  w.samples.assign(160, cplx{});
  w.n_dft = 32;
  w.cp_len = 8;
  w.sample_rate = 15e3 * 32;
  const auto tf = wigner_demodulate(w, 16, 4);
  for (const auto& x : tf.data()) EXPECT_EQ(x, cplx{});
}

TEST(Wigner, DelayWithinCpIsPhaseRamp) {
  const auto tf = random_tf(1, 16, 8);
  const auto w = heisenberg_modulate(tf, 32, 8);
  for (std::size_t d = 0; d <= 8; ++d) {
    // Cyclic delay of the single-symbol frame.
    Waveform shifted = w;
    const std::size_t len = w.samples.size();
    for (std::size_t i = 0; i < len; ++i) shifted.samples[(i + d) % len] = w.samples[i];
    const auto got = wigner_demodulate(shifted, 16, 1);
    for (std::size_t m = 0; m < 16; ++m) {
      const double bin = static_cast<double>(subcarrier_bin(m, 16, 32));
      const cplx expected = tf.at(0, m) * std::polar(1.0, -2.0 * kPi * bin * static_cast<double>(d) / 32.0);
      EXPECT_NEAR(std::abs(got.at(0, m) - expected), 0.0, 1e-12) << "d=" << d << " m=" << m;
    }
  }
}

TEST(Chain, FullIdentity) {
  for (auto [m, n, n_dft, cp] : {std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>{16, 4, 32, 8},
                                 {64, 16, 128, 16},
                                 {1024, 4, 2048, 256}}) {
    const auto dd = random_dd(m, n, m * n);
    const auto back = sfft(wigner_demodulate(heisenberg_modulate(isfft(dd, 15e3), n_dft, cp), m, n));
    EXPECT_LE(max_diff(back.data(), dd.data()), 1e-9 * max_abs(dd.data()));
  }
}
