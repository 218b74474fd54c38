#include <benchmark/benchmark.h>

#include "otfs/kernels.hpp"
#include "otfs/zc.hpp"

namespace {

otfs::PreparedRun make_run() {
  std::vector<otfs::WaveformParams> schemes(2);
  schemes[1].modulation = otfs::Modulation::Ofdm;
  auto run = otfs::prepare_run(schemes, {});
  otfs::TrajectorySpec spec;
  spec.count = 16;
  run.points = otfs::build_trajectory(spec);
  run.scenario.nlos.count = 2;
  run.noise.snr_db = 5.0;
  run.trials = 2;
  return run;
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto run = make_run();
  for (auto _ : state) benchmark::DoNotOptimize(otfs::reference::run_trials(run));
}
BENCHMARK(BM_TrialsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_TrialsOpenMP(benchmark::State& state) {
  const auto run = make_run();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(otfs::run_trials(run, threads));
}
BENCHMARK(BM_TrialsOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CorrelationFft(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto zc = otfs::generate_zc(1, n);
  for (auto _ : state) benchmark::DoNotOptimize(otfs::circular_cross_correlation(zc.samples, zc.samples));
}
BENCHMARK(BM_CorrelationFft)->Arg(139)->Arg(839);

void BM_CorrelationDirect(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto zc = otfs::generate_zc(1, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(otfs::reference::circular_cross_correlation(zc.samples, zc.samples));
}
BENCHMARK(BM_CorrelationDirect)->Arg(139)->Arg(839);

}  // namespace

BENCHMARK_MAIN();
