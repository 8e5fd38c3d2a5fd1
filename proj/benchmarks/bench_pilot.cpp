#include "rws/pilot.hpp"
#include "rws/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

rws::DataMatrix heavy_tailed(rws::Index p) {
  rws::ScenarioSpec s;
  s.distribution = rws::Distribution::T35;
  s.p = p;
  s.n = 100;
  s.seed = 9;
  return rws::sample(s, rws::true_covariance(s));
}

void BM_SamplePilot(benchmark::State& state) {
  const auto x = heavy_tailed(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rws::sample_covariance(x));
}
BENCHMARK(BM_SamplePilot)->Arg(50)->Arg(100)->Arg(200);

void BM_RankPilot(benchmark::State& state) {
  const auto x = heavy_tailed(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rws::rank_pilot(x));
}
BENCHMARK(BM_RankPilot)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_HuberPilot(benchmark::State& state) {
  const auto x = heavy_tailed(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rws::huber_pilot(x));
}
BENCHMARK(BM_HuberPilot)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_MomPilot(benchmark::State& state) {
  const auto x = heavy_tailed(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rws::mom_pilot(x, {10, false, 0}));
}
BENCHMARK(BM_MomPilot)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
