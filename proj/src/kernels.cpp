#include "otfs/kernels.hpp"

#include <exception>

#include <omp.h>

namespace otfs {

ChannelRealization PreparedRun::channel(std::size_t point, int trial) const {
  if (!fixed_channels.empty()) return fixed_channels.at(point);
  return synthesize_scenario_channel(points.at(point), scenario,
                                     derive_seed(seed, 1, point, static_cast<std::uint64_t>(trial)));
}

PreparedRun prepare_run(std::vector<WaveformParams> schemes, const ReceiverOptions& receiver) {
  if (schemes.empty()) throw InvalidArgument("at least one scheme is required");
  PreparedRun run;
  run.receiver = receiver;
  for (const auto& p : schemes) run.tx.push_back(transmit(p));
  run.schemes = std::move(schemes);
  return run;
}

void run_unit(const PreparedRun& run, std::size_t point, int trial, TrialRecord* out) {
  const ChannelRealization ch = run.channel(point, trial);
  for (std::size_t s = 0; s < run.schemes.size(); ++s) {
    const auto& params = run.schemes[s];
    Waveform rx = apply_channel(run.tx[s], ch);
    const auto noise_seed = derive_seed(run.seed, point, static_cast<std::uint64_t>(trial), s + 2);
    switch (run.noise.kind) {
      case NoiseSetting::Kind::None:
        break;
      case NoiseSetting::Kind::Snr:
        rx = add_awgn(rx, run.noise.snr_db, noise_seed);
        break;
      case NoiseSetting::Kind::Absolute:
        rx = add_noise(rx, run.noise.power_w, noise_seed);
        break;
    }
    const auto toa = receive_and_estimate_toa(rx, params, run.receiver);
    const auto r = make_ranging_result(toa, params, ch.true_distance_m, run.receiver.refine_peak);

    TrialRecord& rec = out[s];
    rec.scheme = params.modulation;
    rec.delta_f_hz = params.delta_f_hz;
    rec.speed_mps = run.speed_mps;
    rec.tilt_deg = run.scenario.tilt_deg;
    rec.point_index = ch.trajectory_index;
    rec.trial = trial;
    rec.los_tag = ch.los_tag;
    rec.true_d_m = r.true_distance;
    rec.est_d_m = r.estimated_distance;
    rec.error_m = r.error;
    rec.detected = r.detected;
  }
}

std::vector<TrialRecord> run_trials(const PreparedRun& run, int threads) {
  const std::size_t units = run.unit_count();
  const std::size_t per_unit = run.schemes.size();
  const auto trials = static_cast<std::size_t>(run.trials);
  std::vector<TrialRecord> records(units * per_unit);
  std::exception_ptr failure;
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(units); ++u) {
    try {
      const auto unit = static_cast<std::size_t>(u);
      run_unit(run, unit / trials, static_cast<int>(unit % trials), &records[unit * per_unit]);
    } catch (...) {
#pragma omp critical(otfs_run_trials_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

namespace reference {

std::vector<TrialRecord> run_trials(const PreparedRun& run) {
  std::vector<TrialRecord> records(run.unit_count() * run.schemes.size());
  std::size_t slot = 0;
  for (std::size_t p = 0; p < run.point_count(); ++p)
    for (int t = 0; t < run.trials; ++t) {
      run_unit(run, p, t, &records[slot]);
      slot += run.schemes.size();
    }
  return records;
}

}  // namespace reference
}  // namespace otfs
