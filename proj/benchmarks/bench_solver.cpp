#include "rws/admm.hpp"
#include "rws/estimators.hpp"
#include "rws/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

struct Fixture {
  rws::PilotEstimate pilot;
  rws::Index n = 0;
};

Fixture make_fixture(rws::Index p) {
  rws::ScenarioSpec s;
  s.p = p;
  s.n = 100;
  s.seed = 5;
  return {rws::sample_covariance(rws::sample(s, rws::true_covariance(s))), s.n};
}

void BM_SolveRws(benchmark::State& state) {
  const auto f = make_fixture(state.range(0));
  rws::EstimatorSpec spec;
  spec.lambda = 0.05;
  spec.kappa = 1e3;
  int iterations = 0;
  for (auto _ : state) {
    const auto r = rws::fit(f.pilot, f.n, spec);
    iterations = r.solve->iterations;
    benchmark::DoNotOptimize(r.estimate);
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_SolveRws)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveRpde(benchmark::State& state) {
  const auto f = make_fixture(state.range(0));
  rws::EstimatorSpec spec;
  spec.kind = rws::EstimatorKind::Rpde;
  spec.lambda = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rws::fit(f.pilot, f.n, spec).estimate);
  }
}
BENCHMARK(BM_SolveRpde)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_MuSearch(benchmark::State& state) {
  const auto f = make_fixture(50);
  rws::EstimatorSpec spec;
  spec.lambda = 0.05;
  spec.kappa = 1e3;
  const auto config = rws::solver_config(f.pilot, f.n, spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rws::mu_search(f.pilot.sigma, config, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_MuSearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
