#pragma once

#include "rws/estimators.hpp"
#include "rws/synthetic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rws {

struct MetricsRow {
  std::string estimator;
  double spec_err = 0.0;
  double frob_err = 0.0;
  /// (FP + FN) / p^2 and the same value times 100.
  double fsl_fraction = 0.0;
  double fsl_percent = 0.0;
  bool pd = false;
  double cond = 0.0;
  double gamma_min = 0.0;
  std::size_t nonzeros = 0;
};

/// Errors of `estimate` against `truth`. Selection counts (FSL, nonzeros)
/// use `support` when given, otherwise the estimate itself; an entry counts
/// as zero when |value| <= zero_tol.
MetricsRow compute_metrics(const SymmetricMatrix& estimate, const SymmetricMatrix& truth,
                           double zero_tol = 1e-8,
                           const std::optional<SymmetricMatrix>& support = std::nullopt);

/// Sample mean and standard deviation (n - 1 divisor, 0 for one value).
struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};
MeanSd mean_sd(const std::vector<double>& values);

enum class Tuning { Fixed, CrossValidated };

struct BenchmarkConfig {
  ScenarioSpec scenario;
  std::vector<EstimatorKind> estimators;
  /// Pilot for every estimator but SAM; when absent, the sample covariance
  /// for Normal data and the Huber pilot otherwise.
  std::optional<PilotOptions> pilot;
  Tuning tuning = Tuning::Fixed;
  /// Fixed parameters, and solver settings used in every mode.
  EstimatorSpec defaults;
  std::vector<double> lambda_grid;
  std::vector<double> kappa_grid{1e3, 1e4, 1e5};
  /// Grid for RATE's threshold level (RATE is also the solver warm start).
  std::vector<double> rate_lambda_grid;
  int cv_splits = 5;
  double zero_tol = 1e-8;
  int threads = 1;
};

struct RepRecord {
  int rep = 0;
  MetricsRow metrics;
  double lambda = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
  int iterations = 0;
  bool converged = true;
  /// cond <= kappa (1 + 1e-6) or gamma_min >= tau (1 - 1e-6); true for kinds
  /// without a constraint.
  bool feasible = true;
};

struct EstimatorSummary {
  std::string estimator;
  int reps_ok = 0;
  int failures = 0;
  MeanSd spec_err, frob_err, fsl_fraction, fsl_percent, cond, nonzeros;
  double pd_percent = 0.0;
  double feasible_percent = 0.0;
};

struct BenchmarkReport {
  std::vector<EstimatorSummary> summary;  // in the order of config.estimators
  std::vector<RepRecord> reps;            // rep-major, then estimator order
  std::vector<std::string> failures;
  std::string pilot;
};

/// Runs every repetition (in parallel over reps) and summarizes each
/// estimator. A failing estimator in a rep is recorded and excluded.
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

/// One row per estimator with raw mean and sd columns.
std::string summary_csv(const BenchmarkReport& report);
/// One row per (rep, estimator).
std::string reps_csv(const BenchmarkReport& report);
/// Metrics as rows, estimators as columns, cells "mean(sd)".
std::string summary_markdown(const BenchmarkReport& report);

}  // namespace rws
