#include <benchmark/benchmark.h>

#include "ghzsteer/kernels.hpp"
#include "ghzsteer/network.hpp"
#include "ghzsteer/steering.hpp"
#include "ghzsteer/tomography.hpp"

namespace {

const ghz::CovarianceMatrix& ghz_state() {
  static const auto cm = ghz::prepare_state(ghz::GhzConfig::with_squeezing(ghz::kDefaultSqueezing, 0.7));
  return cm;
}

void BM_SampleParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ghz::sample_quadratures(ghz_state(), state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ghz::sample_quadratures_serial(ghz_state(), state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MeasureParallel(benchmark::State& state) {
  const auto samples = ghz::sample_quadratures(ghz_state(), state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ghz::measure_set(samples));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MeasureSerial(benchmark::State& state) {
  const auto samples = ghz::sample_quadratures(ghz_state(), state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ghz::measure_set_serial(samples));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<double> grid(int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(static_cast<double>(i) / (n - 1));
  return g;
}

void BM_SweepParallel(benchmark::State& state) {
  const auto g = grid(static_cast<int>(state.range(0)));
  const auto cfg = ghz::GhzConfig::with_squeezing(ghz::kDefaultSqueezing, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ghz::sweep_eta(cfg, g));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto g = grid(static_cast<int>(state.range(0)));
  const auto cfg = ghz::GhzConfig::with_squeezing(ghz::kDefaultSqueezing, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ghz::sweep_eta_serial(cfg, g));
}

}  // namespace

BENCHMARK(BM_SampleParallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureParallel)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureSerial)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
