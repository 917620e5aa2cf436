#include <benchmark/benchmark.h>

#include "relaysec/achievable.hpp"
#include "relaysec/bounds.hpp"
#include "relaysec/verify.hpp"

using namespace relaysec;

static void BM_RateFixed(benchmark::State& state) {
  const TimeShare half(0.5);
  double p1 = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rate_fixed(p1, 3.0, 3.0, half));
    p1 = p1 < 1e6 ? p1 * 1.0000001 : 3.0;
  }
}
BENCHMARK(BM_RateFixed);

static void BM_GenieFirstTerm(benchmark::State& state) {
  double p1 = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_term_per_use(p1, 2.0));
    p1 = p1 < 1e6 ? p1 * 1.0000001 : 1.0;
  }
}
BENCHMARK(BM_GenieFirstTerm);

static void BM_SourcePowerControl(benchmark::State& state) {
  const TimeShare half(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_source_power(1e6, 1e4, 1e3, half));
  }
}
BENCHMARK(BM_SourcePowerControl);

static void BM_OptimizeAlpha(benchmark::State& state) {
  const SystemBudget budget(10.0, 10.0, 1000.0);
  const bool power_control = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_alpha(budget, power_control));
  }
}
BENCHMARK(BM_OptimizeAlpha)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_UpperBoundOptimized(benchmark::State& state) {
  const SystemBudget budget(10.0, 10.0, 1000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(upper_bound(budget, std::nullopt));
  }
}
BENCHMARK(BM_UpperBoundOptimized)->Unit(benchmark::kMillisecond);

static void BM_CutsetBisection(benchmark::State& state) {
  const SystemBudget budget(10.0, 0.0, 1000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cutset_no_secrecy(budget));
  }
}
BENCHMARK(BM_CutsetBisection);

static void BM_ChannelSampling(benchmark::State& state) {
  McConfig cfg;
  cfg.samples = state.range(0);
  cfg.seed = 1;
  ChannelSampler sampler(cfg, PhasePowers(0.0, 3.0, 3.0), 3.0, 4.0 / 3.0, 0.0);
  ChannelSample s;
  for (auto _ : state) {
    for (std::int64_t k = 0; k < cfg.samples; ++k) {
      sampler.sample_block(static_cast<std::uint64_t>(k), s);
    }
    benchmark::DoNotOptimize(s.y2[0]);
  }
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_ChannelSampling)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_VerifyRateTerms(benchmark::State& state) {
  McConfig cfg;
  cfg.samples = state.range(0);
  cfg.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_rate_terms(cfg, 3.0, 3.0, 3.0, TimeShare(0.5)));
  }
}
BENCHMARK(BM_VerifyRateTerms)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
