#include "otfs/experiment.hpp"

#include <map>
#include <ostream>

#include <fmt/format.h>

#include "otfs/metrics.hpp"

namespace otfs {
namespace {

std::string num(double v) { return fmt::format("{:.10g}", v); }

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string num(const std::optional<int>& v) { return v ? fmt::format("{}", *v) : std::string(); }

NoiseSetting noise_setting(const NoiseConfig& noise, const WaveformParams& w) {
  NoiseSetting out;
  switch (noise.mode) {
    case NoiseMode::None:
      out.kind = NoiseSetting::Kind::None;
      break;
    case NoiseMode::Snr:
      out.kind = NoiseSetting::Kind::Snr;
      out.snr_db = noise.snr_db;
      break;
    case NoiseMode::Absolute:
      out.kind = NoiseSetting::Kind::Absolute;
      out.power_w = thermal_noise_power(
          noise.noise_figure_db,
          noise.bandwidth_hz.value_or(static_cast<double>(w.m) * w.delta_f_hz));
      break;
  }
  return out;
}

std::optional<double> scheme_rmse(const std::vector<TrialRecord>& records, Modulation m) {
  std::vector<double> errors;
  for (const auto& r : records)
    if (r.scheme == m) errors.push_back(r.error_m);
  if (errors.empty()) return std::nullopt;
  return rmse(errors);
}

void append(std::vector<TrialRecord>& dst, const std::vector<TrialRecord>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

PreparedRun prepare_experiment(const ExperimentConfig& cfg, double delta_f_hz, double speed_mps,
                               double tilt_deg) {
  std::vector<WaveformParams> schemes;
  for (auto m : cfg.schemes) {
    WaveformParams p = cfg.waveform;
    p.delta_f_hz = delta_f_hz;
    p.modulation = m;
    p.validate();
    schemes.push_back(p);
  }
  PreparedRun run = prepare_run(std::move(schemes), cfg.receiver);
  run.noise = noise_setting(cfg.noise, run.schemes.front());
  run.trials = cfg.trials;
  run.seed = cfg.seed;
  run.speed_mps = speed_mps;

  auto& sc = run.scenario;
  sc.carrier_hz = cfg.scenario.carrier_hz;
  sc.tx_power_w = cfg.waveform.tx_power_w;
  sc.g_t_db = cfg.scenario.g_tmax_db;
  sc.antenna = cfg.scenario.antenna;
  sc.tilt_deg = tilt_deg;
  sc.friis_gains = cfg.scenario.friis_gains;
  sc.nlos = cfg.channel.nlos;
  sc.los_threshold_db = cfg.channel.los_threshold_db;

  if (cfg.channel.source == ChannelSource::TapsFile) {
    run.fixed_channels = load_taps(cfg.channel.taps_path, cfg.channel.los_threshold_db);
    if (run.fixed_channels.empty()) throw ValidationError("tap file has no channel rows");
  } else {
    TrajectorySpec spec = cfg.scenario.trajectory;
    spec.speed_mps = speed_mps;
    run.points = build_trajectory(spec);
  }
  return run;
}

std::vector<SchemeSummary> summarize(const std::vector<TrialRecord>& records) {
  using Key = std::tuple<Modulation, double, double, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<ErrorSample>> groups;
  std::map<Key, std::size_t> detected;
  for (const auto& r : records) {
    const Key key{r.scheme, r.delta_f_hz, r.speed_mps, r.tilt_deg};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back({r.point_index, r.error_m, r.los_tag});
    if (r.detected) ++detected[key];
  }
  std::vector<SchemeSummary> out;
  for (const auto& key : order) {
    const auto& samples = groups[key];
    const auto split = split_rmse(samples);
    SchemeSummary s;
    std::tie(s.scheme, s.delta_f_hz, s.speed_mps, s.tilt_deg) = key;
    s.samples = samples.size();
    s.rmse_m = split.total;
    s.rmse_los_m = split.los;
    s.rmse_nlos_m = split.nlos;
    double abs_sum = 0.0;
    for (const auto& e : samples) abs_sum += std::abs(e.error);
    s.mean_abs_error_m = abs_sum / static_cast<double>(samples.size());
    s.detection_rate = static_cast<double>(detected[key]) / static_cast<double>(samples.size());
    out.push_back(s);
  }
  return out;
}

SimulateOutput run_simulate(const ExperimentConfig& cfg, int threads) {
  const double speed = cfg.scenario.trajectory.speed_mps;
  const auto run = prepare_experiment(cfg, cfg.waveform.delta_f_hz, speed, cfg.effective_tilt_deg());
  SimulateOutput out;
  out.records = run_trials(run, threads);
  out.summary = summarize(out.records);
  return out;
}

CdfSweepOutput run_cdf_sweep(const ExperimentConfig& cfg, int threads) {
  if (cfg.sweep.delta_f_hz.size() < 2)
    throw ConfigError("/sweep/delta_f_hz", "cdf-sweep needs at least two values");
  const double speed = cfg.scenario.trajectory.speed_mps;
  const double tilt = cfg.effective_tilt_deg();
  CdfSweepOutput out;
  for (double df : cfg.sweep.delta_f_hz) {
    const auto records = run_trials(prepare_experiment(cfg, df, speed, tilt), threads);
    for (auto m : cfg.schemes) {
      std::vector<double> errors;
      for (const auto& r : records)
        if (r.scheme == m) errors.push_back(r.error_m);
      for (const auto& p : error_cdf(errors)) out.cdf.push_back({m, df, p.abscissa, p.probability});
    }
    append(out.records, records);
  }
  out.summary = summarize(out.records);
  return out;
}

TradeoffOutput run_tradeoff(const ExperimentConfig& cfg, int threads) {
  if (cfg.sweep.speed_mps.size() < 2)
    throw ConfigError("/sweep/speed_mps", "speed-tradeoff needs at least two values");
  TradeoffOutput out;
  for (double v : cfg.sweep.speed_mps) {
    const double tilt = pitch_angle(v, cfg.scenario.airframe).tilt_deg;
    const auto records = run_trials(prepare_experiment(cfg, cfg.waveform.delta_f_hz, v, tilt), threads);
    TradeoffRow row;
    row.speed_mps = v;
    row.tilt_deg = tilt;
    row.rmse_otfs_m = scheme_rmse(records, Modulation::Otfs);
    row.rmse_ofdm_m = scheme_rmse(records, Modulation::Ofdm);
    row.power_w = propulsion_power(v, cfg.scenario.airframe);
    out.rows.push_back(row);
    append(out.records, records);
  }
  return out;
}

TiltOutput run_tilt_sweep(const ExperimentConfig& cfg, int threads) {
  if (cfg.sweep.tilt_deg.empty())
    throw ConfigError("/sweep/tilt_deg", "tilt-sweep needs at least one value");
  const double speed = cfg.scenario.trajectory.speed_mps;
  TrajectorySpec spec = cfg.scenario.trajectory;
  spec.speed_mps = speed;
  const auto points = build_trajectory(spec);
  const int p0 = spec.overhead_index.value_or(spec.count / 2);
  const double fnb = cfg.scenario.antenna.first_null_beamwidth();

  TiltOutput out;
  for (double tilt : cfg.sweep.tilt_deg) {
    const auto run = prepare_experiment(cfg, cfg.waveform.delta_f_hz, speed, tilt);
    const auto records = run_trials(run, threads);
    TiltRow row;
    row.tilt_deg = tilt;
    row.rmse_otfs_m = scheme_rmse(records, Modulation::Otfs);
    row.rmse_ofdm_m = scheme_rmse(records, Modulation::Ofdm);
    try {
      row.last_los_index_formula = los_point_count(spec.height_m, spec.spacing_m, fnb, tilt, p0);
    } catch (const DomainError&) {
    }
    for (const auto& p : points)
      if (geometric_los(p, tilt, fnb)) row.last_los_index_geometric = p.index;
    for (std::size_t i = 0; i < run.point_count(); ++i) {
      const auto ch = run.channel(i, 0);
      const int idx = ch.trajectory_index;
      if (idx < 0 || idx >= static_cast<int>(points.size())) continue;
      if (ch.los_tag == LinkState::Los && geometric_los(points[idx], tilt, fnb)) ++row.n_los_validated;
    }
    out.rows.push_back(row);
    append(out.records, records);
  }
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "scheme,delta_f_hz,speed_mps,point_index,los_tag,true_d_m,est_d_m,error_m,detected\n";
  for (const auto& r : records)
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(r.scheme), num(r.delta_f_hz),
                       num(r.speed_mps), r.point_index, to_string(r.los_tag), num(r.true_d_m),
                       num(r.est_d_m), num(r.error_m), r.detected ? 1 : 0);
}

void write_summary_csv(std::ostream& out, const std::vector<SchemeSummary>& summary) {
  out << "scheme,delta_f_hz,speed_mps,tilt_deg,samples,rmse_m,rmse_los_m,rmse_nlos_m,"
         "mean_abs_error_m,detection_rate\n";
  for (const auto& s : summary)
    out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(s.scheme), num(s.delta_f_hz),
                       num(s.speed_mps), num(s.tilt_deg), s.samples, num(s.rmse_m),
                       num(s.rmse_los_m), num(s.rmse_nlos_m), num(s.mean_abs_error_m),
                       num(s.detection_rate));
}

void write_cdf_csv(std::ostream& out, const std::vector<CdfRow>& rows) {
  out << "scheme,delta_f_hz,abs_error_m,probability\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{}\n", to_string(r.scheme), num(r.delta_f_hz), num(r.abs_error_m),
                       num(r.probability));
}

void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffRow>& rows) {
  out << "speed_mps,tilt_deg,rmse_otfs_m,rmse_ofdm_m,power_w\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{}\n", num(r.speed_mps), num(r.tilt_deg), num(r.rmse_otfs_m),
                       num(r.rmse_ofdm_m), num(r.power_w));
}

void write_tilt_csv(std::ostream& out, const std::vector<TiltRow>& rows) {
  out << "tilt_deg,rmse_otfs_m,rmse_ofdm_m,last_los_index_formula,last_los_index_geometric,"
         "n_los_validated\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{}\n", num(r.tilt_deg), num(r.rmse_otfs_m),
                       num(r.rmse_ofdm_m), num(r.last_los_index_formula),
                       num(r.last_los_index_geometric), r.n_los_validated);
}

}  // namespace otfs
