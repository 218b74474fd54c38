#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "otfs/config.hpp"
#include "otfs/kernels.hpp"

namespace otfs {

/// Per (scheme, delta_f, speed, tilt) aggregate.
struct SchemeSummary {
  Modulation scheme = Modulation::Otfs;
  double delta_f_hz = 0.0;
  double speed_mps = 0.0;
  double tilt_deg = 0.0;
  std::size_t samples = 0;
  double rmse_m = 0.0;
  std::optional<double> rmse_los_m;
  std::optional<double> rmse_nlos_m;
  double mean_abs_error_m = 0.0;
  double detection_rate = 0.0;
};

/// Builds the shared Monte Carlo state for one sweep point.
PreparedRun prepare_experiment(const ExperimentConfig& cfg, double delta_f_hz, double speed_mps,
                               double tilt_deg);

/// Groups records by (scheme, delta_f, speed, tilt) in first-seen order.
std::vector<SchemeSummary> summarize(const std::vector<TrialRecord>& records);

struct SimulateOutput {
  std::vector<TrialRecord> records;
  std::vector<SchemeSummary> summary;
};

struct CdfRow {
  Modulation scheme = Modulation::Otfs;
  double delta_f_hz = 0.0;
  double abs_error_m = 0.0;
  double probability = 0.0;
};

struct CdfSweepOutput {
  std::vector<TrialRecord> records;
  std::vector<SchemeSummary> summary;
  std::vector<CdfRow> cdf;
};

struct TradeoffRow {
  double speed_mps = 0.0;
  double tilt_deg = 0.0;
  std::optional<double> rmse_otfs_m;
  std::optional<double> rmse_ofdm_m;
  double power_w = 0.0;
};

struct TradeoffOutput {
  std::vector<TrialRecord> records;
  std::vector<TradeoffRow> rows;
};

struct TiltRow {
  double tilt_deg = 0.0;
  std::optional<double> rmse_otfs_m;
  std::optional<double> rmse_ofdm_m;
  /// Last LoS point index from the closed form; absent outside its validity window.
  std::optional<int> last_los_index_formula;
  /// Last point whose boresight offset is within the first null.
  std::optional<int> last_los_index_geometric;
  /// Points both inside the first-null cone and tagged LoS by the channel.
  int n_los_validated = 0;
};

struct TiltOutput {
  std::vector<TrialRecord> records;
  std::vector<TiltRow> rows;
};

SimulateOutput run_simulate(const ExperimentConfig& cfg, int threads);
/// Needs at least two sweep.delta_f_hz values.
CdfSweepOutput run_cdf_sweep(const ExperimentConfig& cfg, int threads);
/// Needs at least two sweep.speed_mps values; tilt follows the pitch angle.
TradeoffOutput run_tradeoff(const ExperimentConfig& cfg, int threads);
/// Needs at least one sweep.tilt_deg value.
TiltOutput run_tilt_sweep(const ExperimentConfig& cfg, int threads);

void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SchemeSummary>& summary);
void write_cdf_csv(std::ostream& out, const std::vector<CdfRow>& rows);
void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffRow>& rows);
void write_tilt_csv(std::ostream& out, const std::vector<TiltRow>& rows);

}  // namespace otfs
