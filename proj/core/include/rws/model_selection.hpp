#pragma once

#include "rws/data.hpp"
#include "rws/estimators.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rws {

/// Repeated random-split validation: each split trains on ceil(fraction * n)
/// rows and scores against the pilot of the remaining rows.
struct CvSpec {
  int n_splits = 5;
  double train_fraction = 0.75;
  std::vector<double> lambda_grid;
  /// Ignored (a single row per lambda is still reported per kappa) for kinds
  /// without a condition bound.
  std::vector<double> kappa_grid;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Throws InvalidInput for empty or unsorted grids or a bad fraction.
void validate(const CvSpec& spec);

struct CvScore {
  double lambda = 0.0;
  double kappa = 0.0;
  /// Sum over usable splits of ||fit(train) - pilot(test)||_F^2.
  double score = 0.0;
};

struct CvResult {
  double lambda_hat = 0.0;
  double kappa_hat = 0.0;
  /// Lambda-major, both ascending.
  std::vector<CvScore> table;
  int splits_used = 0;
  std::vector<std::string> warnings;
};

struct Split {
  std::vector<Index> train;
  std::vector<Index> test;
};

/// Split `index` of a CV run: a seeded permutation cut at ceil(fraction * n);
/// both parts sorted.
Split make_split(Index n, double train_fraction, std::uint64_t seed, int index);

/// Grid search over lambda x kappa for the estimator in `base` (whose lambda
/// and kappa are overwritten). Ties go to the smaller lambda, then the smaller
/// kappa. Throws InsufficientData when n < 8 and CvFailure when no split has a
/// usable training pilot.
CvResult cross_validate(const DataMatrix& x, const PilotOptions& pilot,
                        const EstimatorSpec& base, const CvSpec& spec);

/// {0.01, 0.06, ..., 0.96}.
std::vector<double> linear_lambda_grid();
/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(int count, double lo, double hi);

}  // namespace rws
