#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "otfs/experiment.hpp"

using namespace otfs;
using nlohmann::json;

namespace {

ExperimentConfig toy_config() {
  return parse_config(json::parse(R"({
    "waveform": {"subcarriers": 16, "symbols": 4, "n_dft": 32, "n_zc": 13, "cp_len": 8},
    "scenario": {"trajectory": {"count": 3}},
    "noise": {"mode": "none"}
  })"));
}

ExperimentConfig small_config() {
  return parse_config(json::parse(R"({
    "waveform": {"subcarriers": 64, "symbols": 4, "n_dft": 128, "n_zc": 61, "cp_len": 16,
                 "refine_peak": true},
    "scenario": {"trajectory": {"count": 12}},
    "channel": {"nlos": {"count": 2}},
    "noise": {"mode": "snr", "snr_db": 3},
    "trials": 3,
    "seed": 21
  })"));
}

std::string results_text(const std::vector<TrialRecord>& r) {
  std::ostringstream out;
  write_results_csv(out, r);
  return out.str();
}

}  // namespace

TEST(Simulate, ToyNoiselessIsExact) {
  // One point right under the UAV at a range that is a whole number of
  // toy-scale distance quanta (625 m per sample, two samples per bin).
  auto cfg = toy_config();
  const double quantum = kSpeedOfLight / (15e3 * 32);
  cfg.scenario.trajectory.count = 1;
  cfg.scenario.trajectory.overhead_index = 0;
  cfg.scenario.trajectory.height_m = 2.0 * quantum;
  const auto out = run_simulate(cfg, 1);
  ASSERT_EQ(out.records.size(), 2u);
  for (const auto& r : out.records) {
    EXPECT_TRUE(r.detected);
    EXPECT_NEAR(r.error_m, 0.0, 1e-9);
  }
  EXPECT_EQ(out.records[0].scheme, Modulation::Otfs);
  EXPECT_EQ(out.records[1].scheme, Modulation::Ofdm);
}

TEST(Simulate, EqualRowCountsPerScheme) {
  const auto out = run_simulate(small_config(), 2);
  std::size_t otfs = 0, ofdm = 0;
  for (const auto& r : out.records) (r.scheme == Modulation::Otfs ? otfs : ofdm)++;
  EXPECT_EQ(otfs, 36u);
  EXPECT_EQ(ofdm, 36u);
  ASSERT_EQ(out.summary.size(), 2u);
  EXPECT_EQ(out.summary[0].samples, 36u);
}

TEST(Simulate, SchemeSubset) {
  auto cfg = small_config();
  cfg.schemes = {Modulation::Ofdm};
  const auto out = run_simulate(cfg, 1);
  for (const auto& r : out.records) EXPECT_EQ(r.scheme, Modulation::Ofdm);
}

TEST(Simulate, DeterministicAcrossThreadCounts) {
  const auto cfg = small_config();
  const auto a = results_text(run_simulate(cfg, 1).records);
  const auto b = results_text(run_simulate(cfg, 8).records);
  const auto c = results_text(run_simulate(cfg, 3).records);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  auto other = cfg;
  other.seed = 22;
  EXPECT_NE(a, results_text(run_simulate(other, 1).records));
}

TEST(Kernels, ParallelMatchesSerialReference) {
  const auto cfg = small_config();
  const auto run = prepare_experiment(cfg, cfg.waveform.delta_f_hz, 10.0, cfg.effective_tilt_deg());
  const auto serial = reference::run_trials(run);
  for (int threads : {1, 2, 4, 8}) EXPECT_EQ(run_trials(run, threads), serial) << threads;
}

TEST(Kernels, ChannelSharedAcrossSchemesNoiseIsNot) {
  const auto cfg = small_config();
  const auto run = prepare_experiment(cfg, cfg.waveform.delta_f_hz, 10.0, 5.0);
  const auto a = run.channel(3, 1);
  const auto b = run.channel(3, 1);
  const auto c = run.channel(3, 2);
  ASSERT_EQ(a.taps.size(), b.taps.size());
  EXPECT_EQ(a.taps[1].gain, b.taps[1].gain);
  EXPECT_NE(a.taps[1].gain, c.taps[1].gain);
}

TEST(Kernels, FailurePropagates) {
  auto cfg = toy_config();
  auto run = prepare_experiment(cfg, cfg.waveform.delta_f_hz, 10.0, 5.0);
  ChannelRealization far;
  far.taps.push_back({1.0, 1.0, 0.0});  // one second: beyond the frame
  run.fixed_channels = {far};
  EXPECT_THROW(run_trials(run, 4), InvalidArgument);
  EXPECT_THROW(reference::run_trials(run), InvalidArgument);
}

TEST(Simulate, TapFileSource) {
  auto cfg = parse_config(json::parse(R"({"noise": {"mode": "none"}, "trials": 2})"));
  cfg.channel.source = ChannelSource::TapsFile;
  cfg.channel.taps_path = std::string(OTFS_SOURCE_DIR) + "/tests/data/taps_example.csv";
  const auto out = run_simulate(cfg, 2);
  ASSERT_EQ(out.records.size(), 3u * 2u * 2u);
  std::set<int> points;
  for (const auto& r : out.records) points.insert(r.point_index);
  EXPECT_EQ(points, (std::set<int>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(out.records[0].true_d_m, 60.0);
}

TEST(CdfSweep, NeedsTwoSpacings) {
  auto cfg = small_config();
  cfg.sweep.delta_f_hz = {15e3};
  EXPECT_THROW(run_cdf_sweep(cfg, 1), ConfigError);
}

TEST(CdfSweep, OneCdfPerSchemeAndSpacing) {
  auto cfg = small_config();
  cfg.sweep.delta_f_hz = {15e3, 30e3};
  cfg.schemes = {Modulation::Otfs};
  const auto out = run_cdf_sweep(cfg, 2);
  std::set<double> spacings;
  for (const auto& row : out.cdf) {
    EXPECT_EQ(row.scheme, Modulation::Otfs);
    spacings.insert(row.delta_f_hz);
  }
  EXPECT_EQ(spacings, (std::set<double>{15e3, 30e3}));
  EXPECT_EQ(out.summary.size(), 2u);
}

TEST(CdfSweep, QuantizationHalvesWithDoubledSpacing) {
  // Noiseless single direct path at fractional delays: the largest error is
  // bounded by half a delay bin and shrinks with the bin width.
  auto cfg = parse_config(json::parse(R"({
    "waveform": {"subcarriers": 64, "symbols": 2, "n_dft": 128, "n_zc": 61, "cp_len": 16},
    "scenario": {"trajectory": {"count": 61, "spacing_m": 1.7, "height_m": 40},
                 "antenna": {"omnidirectional": true}},
    "noise": {"mode": "none"},
    "schemes": ["OTFS"]
  })"));
  cfg.sweep.delta_f_hz = {15e3, 30e3};
  const auto out = run_cdf_sweep(cfg, 1);
  double max15 = 0.0, max30 = 0.0;
  for (const auto& r : out.records) (r.delta_f_hz == 15e3 ? max15 : max30) = std::max(
      r.delta_f_hz == 15e3 ? max15 : max30, std::abs(r.error_m));
  const double bin15 = 2.0 * kSpeedOfLight / (15e3 * 128);
  const double q30 = kSpeedOfLight / (30e3 * 128);
  EXPECT_LE(max15, bin15 / 2.0 + 1e-9);
  EXPECT_NEAR(max30, max15 / 2.0, q30);
}

TEST(Tradeoff, HoverPowerAndTilt) {
  auto cfg = toy_config();
  cfg.sweep.speed_mps = {0.0, 10.0, 25.0};
  const auto out = run_tradeoff(cfg, 1);
  ASSERT_EQ(out.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(out.rows[0].power_w, 80.0 + 88.6);
  EXPECT_DOUBLE_EQ(out.rows[0].tilt_deg, 0.0);
  EXPECT_LT(out.rows[0].tilt_deg, out.rows[1].tilt_deg);
  EXPECT_TRUE(out.rows[0].rmse_otfs_m.has_value());
  EXPECT_TRUE(out.rows[0].rmse_ofdm_m.has_value());
  cfg.sweep.speed_mps = {3.0};
  EXPECT_THROW(run_tradeoff(cfg, 1), ConfigError);
}

TEST(Tradeoff, PowerHasInteriorMinimum) {
  auto cfg = toy_config();
  for (int v = 0; v <= 30; v += 2) cfg.sweep.speed_mps.push_back(v);
  const auto out = run_tradeoff(cfg, 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < out.rows.size(); ++i)
    if (out.rows[i].power_w < out.rows[best].power_w) best = i;
  EXPECT_GT(best, 0u);
  EXPECT_LT(best, out.rows.size() - 1);
}

TEST(Tradeoff, OtfsNoWorseAtTopSpeed) {
  auto cfg = parse_config(json::parse(R"({
    "scenario": {"antenna": {"omnidirectional": true}},
    "channel": {"nlos": {"count": 3}},
    "noise": {"mode": "snr", "snr_db": 5},
    "trials": 2,
    "sweep": {"speed_mps": [0, 30]}
  })"));
  const auto out = run_tradeoff(cfg, 0);
  const auto& top = out.rows.back();
  EXPECT_LE(*top.rmse_otfs_m, *top.rmse_ofdm_m);
}

TEST(TiltSweep, Columns) {
  auto cfg = toy_config();
  cfg.scenario.trajectory.count = 140;
  cfg.sweep.tilt_deg = {0.0, 10.0, 40.0};
  const auto out = run_tilt_sweep(cfg, 1);
  ASSERT_EQ(out.rows.size(), 3u);
  EXPECT_TRUE(out.rows[0].last_los_index_formula.has_value());
  EXPECT_TRUE(out.rows[0].last_los_index_geometric.has_value());
}

TEST(Csv, Headers) {
  std::ostringstream a, b, c, d, e;
  write_results_csv(a, {});
  write_summary_csv(b, {});
  write_cdf_csv(c, {});
  write_tradeoff_csv(d, {});
  write_tilt_csv(e, {});
  EXPECT_EQ(a.str(), "scheme,delta_f_hz,speed_mps,point_index,los_tag,true_d_m,est_d_m,error_m,detected\n");
  EXPECT_EQ(c.str(), "scheme,delta_f_hz,abs_error_m,probability\n");
  EXPECT_EQ(d.str(), "speed_mps,tilt_deg,rmse_otfs_m,rmse_ofdm_m,power_w\n");
  EXPECT_EQ(b.str().substr(0, 7), "scheme,");
  EXPECT_EQ(e.str().substr(0, 9), "tilt_deg,");
}

TEST(Csv, ResultRowFormat) {
  TrialRecord r;
  r.scheme = Modulation::Ofdm;
  r.delta_f_hz = 30e3;
  r.speed_mps = 10.0;
  r.point_index = 4;
  r.los_tag = LinkState::Nlos;
  r.true_d_m = 31.25;
  r.est_d_m = 29.0;
  r.error_m = 2.25;
  r.detected = true;
  std::ostringstream out;
  write_results_csv(out, {r});
  EXPECT_NE(out.str().find("\nOFDM,30000,10,4,NLoS,31.25,29,2.25,1\n"), std::string::npos);
}
