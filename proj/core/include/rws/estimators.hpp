#pragma once

#include "rws/admm.hpp"
#include "rws/data.hpp"
#include "rws/pilot.hpp"

#include <optional>
#include <string>

namespace rws {

/// How to build the pilot from data.
struct PilotOptions {
  PilotMethod method = PilotMethod::Sample;
  double fisher_constant = kMadConsistency;
  bool allow_degenerate_scale = false;
  HuberTuning huber;
  /// Median-of-means group count; 0 picks min(n, 10).
  MomOptions mom{0, false, 0};
};

PilotEstimate build_pilot(const DataMatrix& x, const PilotOptions& options);

/// The estimators compared throughout the library.
enum class EstimatorKind {
  Sample,       // the pilot itself
  Rate,         // entry-dependent soft-thresholding of the pilot
  Rpde,         // eigenvalue floor tau
  Rws,          // condition number bound kappa
  Arws1,        // weights |pilot_ij|
  Arws2,        // weights 1 / (|RATE_ij| + 1/n)
  Correlation,  // condition-bounded correlation matrix with unit diagonal
};

std::string to_string(EstimatorKind k);
/// Accepts sam|sample, rate, rpde|pde, rws, arws1, arws2, corr.
EstimatorKind parse_estimator_kind(const std::string& name);

/// True for the kinds tuned over a kappa grid.
bool uses_kappa(EstimatorKind k);
/// True for the kinds solved by the alternating direction method.
bool uses_solver(EstimatorKind k);

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Rws;
  /// Penalty level; for Rate this is the adaptive threshold level.
  double lambda = 0.1;
  double kappa = 1e4;
  double tau = 1e-4;
  /// Threshold level of the RATE matrix used as warm start and for ARWS2.
  double rate_lambda = 1.0;
  double mu = 1.0;
  double epsilon = 1e-6;
  int max_iters = 5000;
  /// Start the solver from RATE instead of the raw pilot.
  bool warm_start_rate = true;
  /// Return the starting point directly when it is already feasible.
  bool accept_feasible_start = false;
};

struct FitResult {
  /// Reported estimate (feasible for the solver-based kinds).
  SymmetricMatrix estimate;
  /// Matrix whose zero pattern is the estimated support; for solver-based
  /// kinds this is the sparse Sigma-iterate.
  SymmetricMatrix support;
  std::optional<SolveResult> solve;
};

/// Solver configuration that fit() would use for `spec` on this pilot.
SolverConfig solver_config(const PilotEstimate& pilot, Index n, const EstimatorSpec& spec);

FitResult fit(const PilotEstimate& pilot, Index n, const EstimatorSpec& spec);

/// sigma_ij / sqrt(sigma_ii sigma_jj). Throws InvalidInput on a nonpositive
/// diagonal.
SymmetricMatrix to_correlation(const SymmetricMatrix& sigma);

}  // namespace rws
