#include "rws/admm.hpp"

#include "rws/errors.hpp"
#include "rws/parallel.hpp"
#include "rws/projection.hpp"
#include "rws/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rws {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::RWS: return "rws";
    case Variant::ARWS: return "arws";
    case Variant::RPDE: return "rpde";
    case Variant::Correlation: return "corr";
  }
  return "unknown";
}

namespace {

bool uses_kappa(Variant v) { return v != Variant::RPDE; }

std::vector<FixedEntry> effective_fixed_entries(const SolverConfig& config, Index p) {
  if (config.variant != Variant::Correlation) return {};
  std::vector<FixedEntry> out;
  if (config.fixed_entries.empty()) {
    for (Index i = 0; i < p; ++i) out.push_back({i, i, 1.0});
    return out;
  }
  for (const auto& e : config.fixed_entries) {
    out.push_back(e);
    if (e.row != e.col) out.push_back({e.col, e.row, e.value});
  }
  return out;
}

void apply_fixed(Eigen::MatrixXd& m, const std::vector<FixedEntry>& fixed) {
  for (const auto& e : fixed) m(e.row, e.col) = e.value;
}

// Y-step: nearest point of the variant's constraint set.
void project_step(Eigen::MatrixXd& y, const SolverConfig& config) {
  if (config.variant == Variant::RPDE) {
    detail::project_floor_inplace(y, config.tau);
  } else {
    detail::project_cond_inplace(y, config.kappa);
  }
}

double weight_at(const SolverConfig& config, Index i, Index j) {
  return (config.variant == Variant::ARWS && config.weights) ? (*config.weights)(i, j) : 1.0;
}

}  // namespace

void validate(const SolverConfig& config, Index p) {
  if (!(config.lambda >= 0.0) || std::isinf(config.lambda)) {
    throw InvalidInput("lambda must be finite and nonnegative");
  }
  if (uses_kappa(config.variant) && (!(config.kappa >= 1.0) || std::isinf(config.kappa))) {
    throw InvalidInput("kappa must be finite and >= 1");
  }
  if (config.variant == Variant::RPDE && (!(config.tau > 0.0) || std::isinf(config.tau))) {
    throw InvalidInput("tau must be positive");
  }
  if (!(config.mu > 0.0) || std::isinf(config.mu)) throw InvalidInput("mu must be positive");
  if (!(config.epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  if (config.max_iters < 1) throw InvalidInput("max_iters must be at least 1");
  if (config.variant == Variant::ARWS && !config.weights) {
    throw InvalidInput("ARWS needs a weight matrix");
  }
  if (config.weights) {
    const auto& w = *config.weights;
    if (w.rows() != p || w.cols() != p) throw InvalidInput("weight matrix dimension mismatch");
    if ((w.array() < 0.0).any() || !w.allFinite()) {
      throw InvalidInput("weights must be finite and nonnegative");
    }
    if (w != w.transpose()) throw InvalidInput("weight matrix must be symmetric");
  }
  for (const auto& e : config.fixed_entries) {
    if (e.row < 0 || e.row >= p || e.col < 0 || e.col >= p) {
      throw InvalidInput("fixed entry index out of range");
    }
    if (!std::isfinite(e.value)) throw InvalidInput("fixed entry value must be finite");
  }
  if (config.warm_start && config.warm_start->dim() != p) {
    throw InvalidInput("warm start dimension mismatch");
  }
}

double objective(const SymmetricMatrix& sigma, const SymmetricMatrix& pilot, double lambda,
                 const std::optional<Eigen::MatrixXd>& weights) {
  if (sigma.dim() != pilot.dim()) throw InvalidInput("objective: dimension mismatch");
  const Index p = sigma.dim();
  if (weights && (weights->rows() != p || weights->cols() != p)) {
    throw InvalidInput("objective: weight dimension mismatch");
  }
  const double fit = 0.5 * (sigma.matrix() - pilot.matrix()).squaredNorm();
  double penalty = 0.0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (i == j) continue;
      const double w = weights ? (*weights)(i, j) : 1.0;
      penalty += w * std::abs(sigma(i, j));
    }
  }
  return fit + lambda * penalty;
}

bool satisfies_constraint(const SymmetricMatrix& m, const SolverConfig& config) {
  if (config.variant == Variant::RPDE) return min_eigenvalue(m) >= config.tau;
  if (config.variant == Variant::Correlation) {
    for (const auto& e : effective_fixed_entries(config, m.dim())) {
      if (m(e.row, e.col) != e.value) return false;
    }
  }
  return condition_number(m) <= config.kappa;
}

SolveResult solve(const SymmetricMatrix& pilot, const SolverConfig& config,
                  const std::optional<AdmmState>& init) {
  const Index p = pilot.dim();
  validate(config, p);
  const auto fixed = effective_fixed_entries(config, p);
  const std::optional<Eigen::MatrixXd> penalty_weights =
      config.variant == Variant::ARWS ? config.weights : std::nullopt;

  SolveResult result;
  const SymmetricMatrix& start = config.warm_start ? *config.warm_start : pilot;

  if (!init && config.accept_feasible_start && satisfies_constraint(start, config)) {
    result.estimate = start;
    result.sparse_estimate = start;
    result.converged = true;
    result.accepted_start = true;
    result.objective = objective(start, pilot, config.lambda, penalty_weights);
    result.final_state = {start.matrix(), start.matrix(), Eigen::MatrixXd::Zero(p, p), 0, 0.0, 0.0};
    return result;
  }

  // Without a penalty a feasible pilot is its own nearest feasible point.
  if (!init && config.lambda == 0.0 && satisfies_constraint(pilot, config)) {
    result.estimate = pilot;
    result.sparse_estimate = pilot;
    result.converged = true;
    result.accepted_start = true;
    result.objective = 0.0;
    result.final_state = {pilot.matrix(), pilot.matrix(), Eigen::MatrixXd::Zero(p, p), 0, 0.0, 0.0};
    return result;
  }

  AdmmState state;
  if (init) {
    if (init->sigma.rows() != p || init->y.rows() != p || init->lambda.rows() != p) {
      throw InvalidInput("initial state dimension mismatch");
    }
    state = *init;
    state.iter = 0;
  } else {
    state.sigma = start.matrix();
    state.y = start.matrix();
    state.lambda = Eigen::MatrixXd::Zero(p, p);
  }

  const double mu = config.mu;
  const double shrink = mu / (1.0 + mu);
  const Eigen::MatrixXd& target = pilot.matrix();

  Eigen::MatrixXd thresholds(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) thresholds(i, j) = i == j ? 0.0 : config.lambda * weight_at(config, i, j);
  }

  AdmmState best = state;
  double best_score = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd next(p, p);

  for (int k = 1; k <= config.max_iters; ++k) {
    // Y-step.
    state.y = state.sigma + mu * state.lambda;
    project_step(state.y, config);

    // Sigma-step.
    const Eigen::MatrixXd z = target - state.lambda + state.y / mu;
    for (Index j = 0; j < p; ++j) {
      for (Index i = 0; i < p; ++i) next(i, j) = shrink * soft_threshold(z(i, j), thresholds(i, j));
    }
    apply_fixed(next, fixed);

    // Dual step.
    state.lambda += (next - state.y) / mu;

    const double denom = std::max(state.sigma.squaredNorm(), 1e-20);
    state.relative_change = (next - state.sigma).squaredNorm() / denom;
    state.primal_residual = (next - state.y).squaredNorm() / denom;
    state.sigma.swap(next);
    state.iter = k;
    if (config.record_trace) {
      result.trace.push_back({state.relative_change, state.primal_residual});
    }
    const double score = std::max(state.relative_change, state.primal_residual);
    if (score < config.epsilon) {
      result.converged = true;
      best = state;
      break;
    }
    if (score < best_score) {
      best_score = score;
      best = state;
    }
  }
  if (!result.converged) best.iter = state.iter;

  Eigen::MatrixXd estimate = best.y;
  apply_fixed(estimate, fixed);
  result.estimate = SymmetricMatrix(estimate);
  result.sparse_estimate = SymmetricMatrix(best.sigma);
  result.iterations = state.iter;
  result.objective = objective(result.estimate, pilot, config.lambda, penalty_weights);
  result.final_state = std::move(best);
  return result;
}

std::vector<double> mu_grid() {
  std::vector<double> grid;
  for (int k = 0; 0.1 + 0.5 * k <= 10.0; ++k) grid.push_back(0.1 + 0.5 * k);
  grid.push_back(10.0);
  return grid;
}

MuSearchResult mu_search(const SymmetricMatrix& pilot, const SolverConfig& config, int threads) {
  validate(config, pilot.dim());
  const auto grid = mu_grid();
  std::vector<SolveResult> runs(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    SolverConfig c = config;
    c.mu = grid[i];
    runs[i] = solve(pilot, c);
  });
  MuSearchResult out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.iterations.push_back(runs[i].iterations);
    const bool better = (runs[i].converged && !runs[best].converged) ||
                        (runs[i].converged == runs[best].converged &&
                         runs[i].iterations < runs[best].iterations);
    if (better) best = i;
  }
  out.best_mu = grid[best];
  out.result = std::move(runs[best]);
  return out;
}

double kkt_residual(const SymmetricMatrix& pilot, const AdmmState& state,
                    const SolverConfig& config) {
  const Index p = pilot.dim();
  const auto fixed = effective_fixed_entries(config, p);
  Eigen::MatrixXi pinned = Eigen::MatrixXi::Zero(p, p);
  for (const auto& e : fixed) pinned(e.row, e.col) = 1;
  const Eigen::MatrixXd r = pilot.matrix() - state.sigma - state.lambda;
  double worst = 0.0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (pinned(i, j)) continue;
      double v = 0.0;
      if (i == j) {
        v = std::abs(r(i, i));
      } else {
        const double t = config.lambda * weight_at(config, i, j);
        const double s = state.sigma(i, j);
        if (s > 0.0) {
          v = std::abs(r(i, j) - t);
        } else if (s < 0.0) {
          v = std::abs(r(i, j) + t);
        } else {
          v = std::max(0.0, std::abs(r(i, j)) - t);
        }
      }
      worst = std::max(worst, v);
    }
  }
  return worst;
}

}  // namespace rws
