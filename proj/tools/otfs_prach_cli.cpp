#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "otfs/config.hpp"
#include "otfs/experiment.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  int threads = 0;
};

void add_common(CLI::App* cmd, Options& opt, bool with_output) {
  cmd->add_option("--config", opt.config, "Experiment config (JSON)")->required();
  if (!with_output) return;
  cmd->add_option("--seed", opt.seed, "Override the master seed");
  cmd->add_option("--out", opt.out, "Output directory")->capture_default_str();
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
}

template <typename Writer, typename Data>
void write_file(const fs::path& path, Writer writer, const Data& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw otfs::ValidationError("cannot write '" + path.string() + "'");
  writer(out, data);
  if (!out) throw otfs::ValidationError("failed writing '" + path.string() + "'");
}

otfs::ExperimentConfig load(const Options& opt) {
  auto cfg = otfs::load_config(opt.config);
  if (opt.seed) cfg.seed = *opt.seed;
  return cfg;
}

void print_summary(const std::vector<otfs::SchemeSummary>& summary) {
  for (const auto& s : summary)
    std::cout << fmt::format("{:<5} df={:g} Hz v={:g} m/s  rmse={:.4f} m  detected={:.1f}%\n",
                             otfs::to_string(s.scheme), s.delta_f_hz, s.speed_mps, s.rmse_m,
                             100.0 * s.detection_rate);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OTFS/OFDM PRACH ranging simulator"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Run the scenario once per trajectory point and trial");
  auto* cdf = app.add_subcommand("cdf-sweep", "Ranging-error CDFs across subcarrier spacings");
  auto* tradeoff = app.add_subcommand("speed-tradeoff", "RMSE and propulsion power versus speed");
  auto* tilt = app.add_subcommand("tilt-sweep", "RMSE and LoS point counts versus antenna tilt");
  auto* validate = app.add_subcommand("validate-config", "Parse a config and print its canonical form");
  for (auto* cmd : {simulate, cdf, tradeoff, tilt}) add_common(cmd, opt, true);
  add_common(validate, opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      std::cout << otfs::to_json(load(opt)).dump(2) << '\n';
      return 0;
    }

    const auto cfg = load(opt);
    const fs::path out_dir(opt.out);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw otfs::ValidationError("cannot create '" + out_dir.string() + "': " + ec.message());

    if (simulate->parsed()) {
      const auto res = otfs::run_simulate(cfg, opt.threads);
      write_file(out_dir / "results.csv", otfs::write_results_csv, res.records);
      write_file(out_dir / "summary.csv", otfs::write_summary_csv, res.summary);
      print_summary(res.summary);
    } else if (cdf->parsed()) {
      const auto res = otfs::run_cdf_sweep(cfg, opt.threads);
      write_file(out_dir / "results.csv", otfs::write_results_csv, res.records);
      write_file(out_dir / "summary.csv", otfs::write_summary_csv, res.summary);
      write_file(out_dir / "cdf.csv", otfs::write_cdf_csv, res.cdf);
      print_summary(res.summary);
    } else if (tradeoff->parsed()) {
      const auto res = otfs::run_tradeoff(cfg, opt.threads);
      write_file(out_dir / "results.csv", otfs::write_results_csv, res.records);
      write_file(out_dir / "tradeoff.csv", otfs::write_tradeoff_csv, res.rows);
    } else if (tilt->parsed()) {
      const auto res = otfs::run_tilt_sweep(cfg, opt.threads);
      write_file(out_dir / "results.csv", otfs::write_results_csv, res.records);
      write_file(out_dir / "tilt.csv", otfs::write_tilt_csv, res.rows);
    }
    return 0;
  } catch (const otfs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const otfs::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
}
