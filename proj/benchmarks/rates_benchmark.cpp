#include <benchmark/benchmark.h>

#include <vector>

#include "relaycoop/analysis.hpp"

using namespace relaycoop;

static void BM_optimize_alpha_rho(benchmark::State& state) {
  const auto cfg = ChannelConfig::from_gain(4.0, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_alpha_rho(ObjectiveKind::TxCutset, cfg));
}
BENCHMARK(BM_optimize_alpha_rho);

static void BM_optimize_cf_alpha(benchmark::State& state) {
  const auto cfg = ChannelConfig::from_gain(4.0, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_cf_alpha(cfg));
}
BENCHMARK(BM_optimize_cf_alpha);

static void BM_case_rates(benchmark::State& state) {
  const auto cfg = ChannelConfig::from_gain(4.0, 20.0);
  const auto id = static_cast<CaseId>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(case_rates(id, cfg));
}
BENCHMARK(BM_case_rates)->DenseRange(1, 4);

static void BM_verify_ordering(benchmark::State& state) {
  const auto cfg = ChannelConfig::from_gain(4.0, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_ordering(cfg));
}
BENCHMARK(BM_verify_ordering);

static void BM_sweep(benchmark::State& state) {
  const std::vector<CaseId> cases(kAllCases.begin(), kAllCases.end());
  const auto qs = default_sweep_quantities();
  SweepOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  const auto base = ChannelConfig::from_gain(1.0, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(sweep(cases, qs, 0.05, 1.6, 200, base, opt));
}
BENCHMARK(BM_sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
