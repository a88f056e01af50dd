#include <benchmark/benchmark.h>

#include "jrc/deterministic.hpp"
#include "jrc/experiments.hpp"
#include "jrc/rmca.hpp"
#include "jrc/robust.hpp"

namespace {

jrc::RandomMarket market(benchmark::State& state) {
  jrc::Rng rng(42);
  return jrc::random_market(static_cast<std::size_t>(state.range(0)),
                            static_cast<std::size_t>(state.range(1)), rng);
}

void BM_WelfareLp(benchmark::State& state) {
  const auto mk = market(state);
  const auto problem = jrc::welfare_problem(mk.set.center, mk.costs, mk.budgets);
  for (auto _ : state) benchmark::DoNotOptimize(jrc::solve_allocation(problem));
}

void BM_Deterministic(benchmark::State& state) {
  const auto mk = market(state);
  jrc::Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(jrc::det_run(mk.set.center, mk.budgets, mk.costs, rng));
}

void BM_RmcaPhaseA(benchmark::State& state) {
  const auto mk = market(state);
  const jrc::UncertaintySet set = mk.set;
  for (auto _ : state) benchmark::DoNotOptimize(jrc::rmca_phase_a(set, mk.budgets, mk.costs));
}

void BM_RmcaPhaseB(benchmark::State& state) {
  const auto mk = market(state);
  const jrc::UncertaintySet set = mk.set;
  const auto a = jrc::rmca_phase_a(set, mk.budgets, mk.costs);
  jrc::Rng rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(jrc::rmca_phase_b(mk.set.center, a, set, mk.budgets, mk.costs, rng));
}

void BM_ChannelDep(benchmark::State& state) {
  const auto link = jrc::reference_link();
  const auto samples = static_cast<std::size_t>(state.range(0));
  jrc::Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(jrc::channel_dep(link, samples, rng));
}

void market_sizes(benchmark::internal::Benchmark* b) {
  for (int n : {5, 10, 20})
    for (int m : {3, 5, 10}) b->Args({n, m});
}

}  // namespace

BENCHMARK(BM_WelfareLp)->Apply(market_sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Deterministic)->Apply(market_sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RmcaPhaseA)->Apply(market_sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RmcaPhaseB)->Apply(market_sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelDep)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
