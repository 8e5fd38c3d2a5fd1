#pragma once

#include "rws/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rws {

/// Which constraint the auxiliary Y-iterate is projected onto, and how the
/// penalty is weighted.
enum class Variant {
  RWS,          // cond(Y) <= kappa
  ARWS,         // cond(Y) <= kappa, weighted penalty lambda * W
  RPDE,         // Y >= tau I
  Correlation,  // cond(Y) <= kappa, entries in the fixed set pinned to b_ij
};

std::string to_string(Variant v);

struct FixedEntry {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

struct SolverConfig {
  Variant variant = Variant::RWS;
  double lambda = 0.1;
  double kappa = 1e4;  // RWS, ARWS, Correlation
  double tau = 1e-4;   // RPDE
  double mu = 1.0;
  double epsilon = 1e-6;
  int max_iters = 5000;
  /// Required for ARWS: symmetric nonnegative penalty weights.
  std::optional<Eigen::MatrixXd> weights;
  /// Correlation variant; defaults to a unit diagonal when empty. Stored
  /// symmetrically on use: (i, j, b) also pins (j, i).
  std::vector<FixedEntry> fixed_entries;
  /// Starting point for Sigma and Y (e.g. the thresholded pilot). The pilot
  /// itself is used when absent.
  std::optional<SymmetricMatrix> warm_start;
  /// Return the starting point untouched when it already satisfies the
  /// variant's constraint (only when no explicit init state is given).
  bool accept_feasible_start = false;
  bool record_trace = true;
};

/// Throws InvalidInput when the configuration is inconsistent for dimension p.
void validate(const SolverConfig& config, Index p);

struct AdmmState {
  Eigen::MatrixXd sigma;   // sparse iterate
  Eigen::MatrixXd y;       // feasible iterate
  Eigen::MatrixXd lambda;  // scaled dual
  int iter = 0;
  double primal_residual = 0.0;
  double relative_change = 0.0;
};

struct IterationRecord {
  double relative_change = 0.0;  // ||S^{k+1} - S^k||_F^2 / ||S^k||_F^2
  double primal_residual = 0.0;  // ||S^{k+1} - Y^{k+1}||_F^2 / ||S^k||_F^2
};

struct SolveResult {
  /// The feasible iterate Y at termination.
  SymmetricMatrix estimate;
  /// The sparse iterate Sigma at termination (exact zeros preserved).
  SymmetricMatrix sparse_estimate;
  int iterations = 0;
  bool converged = false;
  /// The starting point was returned as-is because it was already feasible.
  bool accepted_start = false;
  double objective = 0.0;
  std::vector<IterationRecord> trace;
  AdmmState final_state;
};

/// 0.5 ||sigma - pilot||_F^2 + lambda * sum_{i != j} w_ij |sigma_ij|
/// (w == 1 when weights are absent).
double objective(const SymmetricMatrix& sigma, const SymmetricMatrix& pilot, double lambda,
                 const std::optional<Eigen::MatrixXd>& weights = std::nullopt);

/// Alternating direction method for
///   min 0.5 ||S - pilot||_F^2 + lambda ||W o S||_{1,off}  s.t. the variant's
///   constraint.
/// Each sweep projects Sigma + mu * Lambda onto the constraint set (Y-step),
/// soft-thresholds Z = pilot - Lambda + Y / mu (Sigma-step), then takes the
/// dual step Lambda += (Sigma - Y) / mu.
///
/// Hitting max_iters is not an error: the result has converged == false and
/// carries the iterate with the smallest residual.
SolveResult solve(const SymmetricMatrix& pilot, const SolverConfig& config,
                  const std::optional<AdmmState>& init = std::nullopt);

/// True when `m` satisfies the variant's constraint (cond <= kappa, or
/// gamma_min >= tau).
bool satisfies_constraint(const SymmetricMatrix& m, const SolverConfig& config);

/// {0.1, 0.6, ..., 9.6, 10.0}.
std::vector<double> mu_grid();

struct MuSearchResult {
  double best_mu = 0.0;
  SolveResult result;
  std::vector<int> iterations;  // per grid point, same order as mu_grid()
};

/// Solves once per mu in mu_grid() and keeps the mu with the fewest
/// iterations to convergence (converged runs first; ties -> smaller mu).
MuSearchResult mu_search(const SymmetricMatrix& pilot, const SolverConfig& config,
                         int threads = 1);

/// Largest violation of the stationarity conditions for the pair
/// (sigma, lambda): off the diagonal, |(pilot - sigma - lambda)_ij| must not
/// exceed lambda * w_ij and must equal it with the sign of sigma_ij wherever
/// sigma_ij != 0; on the diagonal the residual must vanish. Entries in the
/// fixed set are skipped.
double kkt_residual(const SymmetricMatrix& pilot, const AdmmState& state,
                    const SolverConfig& config);

}  // namespace rws
