#include "rws/model_selection.hpp"

#include "rws/errors.hpp"
#include "rws/parallel.hpp"
#include "rws/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rws {

namespace {

void check_grid(const std::vector<double>& grid, const char* name, double min_value) {
  if (grid.empty()) throw InvalidInput(std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < min_value) {
      throw InvalidInput(std::string(name) + " grid has an out-of-range value");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidInput(std::string(name) + " grid must be strictly ascending");
    }
  }
}

struct SplitPilots {
  PilotEstimate train;
  PilotEstimate test;
  Index n_train = 0;
};

}  // namespace

void validate(const CvSpec& spec) {
  if (spec.n_splits < 1) throw InvalidInput("n_splits must be at least 1");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw InvalidInput("train_fraction must lie in (0, 1)");
  }
  check_grid(spec.lambda_grid, "lambda", 0.0);
  check_grid(spec.kappa_grid, "kappa", 1.0);
}

Split make_split(Index n, double train_fraction, std::uint64_t seed, int index) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  auto rng = make_rng(seed, Stream::Split, static_cast<std::uint64_t>(index));
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto n_train = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(n)));
  Split s;
  s.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

CvResult cross_validate(const DataMatrix& x, const PilotOptions& pilot,
                        const EstimatorSpec& base, const CvSpec& spec) {
  validate(spec);
  if (x.n() < 8) throw InsufficientData("cross-validation needs at least 8 observations");

  CvResult result;
  std::vector<SplitPilots> splits;
  for (int s = 0; s < spec.n_splits; ++s) {
    const Split split = make_split(x.n(), spec.train_fraction, spec.seed, s);
    try {
      const DataMatrix train = x.subset(split.train);
      const DataMatrix test = x.subset(split.test);
      splits.push_back({build_pilot(train, pilot), build_pilot(test, pilot), train.n()});
    } catch (const Error& e) {
      result.warnings.push_back("split " + std::to_string(s) + " skipped: " + e.what());
    }
  }
  if (splits.empty()) throw CvFailure("every cross-validation split failed");
  result.splits_used = static_cast<int>(splits.size());

  const bool per_kappa = uses_kappa(base.kind);
  const std::size_t nl = spec.lambda_grid.size();
  const std::size_t nk = per_kappa ? spec.kappa_grid.size() : 1;
  std::vector<double> scores(nl * nk, 0.0);
  std::vector<std::string> failures(nl * nk);

  parallel_for(nl * nk, spec.threads, [&](std::size_t task) {
    EstimatorSpec e = base;
    e.lambda = spec.lambda_grid[task / nk];
    if (per_kappa) e.kappa = spec.kappa_grid[task % nk];
    double total = 0.0;
    try {
      for (const auto& sp : splits) {
        const FitResult fitted = fit(sp.train, sp.n_train, e);
        total += (fitted.estimate.matrix() - sp.test.sigma.matrix()).squaredNorm();
      }
    } catch (const Error& err) {
      failures[task] = err.what();
      total = std::numeric_limits<double>::infinity();
    }
    scores[task] = total;
  });

  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t li = 0; li < nl; ++li) {
    for (std::size_t ki = 0; ki < spec.kappa_grid.size(); ++ki) {
      const std::size_t task = li * nk + (per_kappa ? ki : 0);
      const double score = scores[task];
      result.table.push_back({spec.lambda_grid[li], spec.kappa_grid[ki], score});
      if (score < best) {
        best = score;
        found = true;
        result.lambda_hat = spec.lambda_grid[li];
        result.kappa_hat = spec.kappa_grid[ki];
      }
    }
  }
  for (std::size_t t = 0; t < failures.size(); ++t) {
    if (!failures[t].empty()) result.warnings.push_back("grid point failed: " + failures[t]);
  }
  if (!found) throw CvFailure("no grid point produced a finite score");
  return result;
}

std::vector<double> linear_lambda_grid() {
  std::vector<double> grid;
  for (int k = 0; k < 20; ++k) grid.push_back(0.01 + 0.05 * k);
  return grid;
}

std::vector<double> log_grid(int count, double lo, double hi) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo)) throw InvalidInput("log_grid: need count >= 1, 0 < lo <= hi");
  if (count == 1) return {lo};
  std::vector<double> grid;
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < count; ++k) grid.push_back(std::exp(a + (b - a) * k / (count - 1)));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace rws
