#include "rws/pilot.hpp"
#include "rws/projection.hpp"
#include "rws/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

// Sample covariance of n = p banded Gaussian rows: indefinite for p > n.
rws::SymmetricMatrix noisy_banded(rws::Index p, rws::Index n) {
  rws::ScenarioSpec s;
  s.p = p;
  s.n = n;
  s.seed = 3;
  return rws::sample_covariance(rws::sample(s, rws::true_covariance(s))).sigma;
}

void BM_ProjectCond(benchmark::State& state) {
  const auto p = static_cast<rws::Index>(state.range(0));
  const auto y = noisy_banded(p, p / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rws::project_cond(y, 100.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectCond)->RangeMultiplier(2)->Range(25, 400)->Complexity(benchmark::oNCubed);

void BM_ProjectFloor(benchmark::State& state) {
  const auto p = static_cast<rws::Index>(state.range(0));
  const auto y = noisy_banded(p, p / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rws::project_floor(y, 1e-4));
  }
}
BENCHMARK(BM_ProjectFloor)->RangeMultiplier(2)->Range(25, 400);

void BM_CondSpectrum(benchmark::State& state) {
  const auto p = static_cast<rws::Index>(state.range(0));
  const auto eig = rws::sym_eig(noisy_banded(p, p / 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rws::project_cond_spectrum(eig.values, 100.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CondSpectrum)->RangeMultiplier(2)->Range(25, 400)->Complexity(benchmark::oN);

}  // namespace
