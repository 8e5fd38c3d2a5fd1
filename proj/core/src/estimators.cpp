#include "rws/estimators.hpp"

#include "rws/errors.hpp"
#include "rws/thresholding.hpp"

#include <algorithm>
#include <cmath>

namespace rws {

PilotEstimate build_pilot(const DataMatrix& x, const PilotOptions& options) {
  switch (options.method) {
    case PilotMethod::Sample: return sample_covariance(x);
    case PilotMethod::Rank:
      return rank_pilot(x, options.fisher_constant, options.allow_degenerate_scale);
    case PilotMethod::Huber: return huber_pilot(x, options.huber);
    case PilotMethod::MedianOfMeans: {
      MomOptions mom = options.mom;
      if (mom.groups <= 0) mom.groups = static_cast<int>(std::min<Index>(x.n(), 10));
      return mom_pilot(x, mom);
    }
  }
  throw InvalidInput("unknown pilot method");
}

std::string to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Sample: return "SAM";
    case EstimatorKind::Rate: return "RATE";
    case EstimatorKind::Rpde: return "RPDE";
    case EstimatorKind::Rws: return "RWS";
    case EstimatorKind::Arws1: return "ARWS1";
    case EstimatorKind::Arws2: return "ARWS2";
    case EstimatorKind::Correlation: return "CORR";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(const std::string& raw) {
  std::string name = raw;
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "sam" || name == "sample") return EstimatorKind::Sample;
  if (name == "rate") return EstimatorKind::Rate;
  if (name == "rpde" || name == "pde") return EstimatorKind::Rpde;
  if (name == "rws") return EstimatorKind::Rws;
  if (name == "arws1") return EstimatorKind::Arws1;
  if (name == "arws2") return EstimatorKind::Arws2;
  if (name == "corr" || name == "correlation") return EstimatorKind::Correlation;
  throw InvalidInput("unknown estimator '" + raw + "'");
}

bool uses_kappa(EstimatorKind k) {
  return k == EstimatorKind::Rws || k == EstimatorKind::Arws1 || k == EstimatorKind::Arws2 ||
         k == EstimatorKind::Correlation;
}

bool uses_solver(EstimatorKind k) { return uses_kappa(k) || k == EstimatorKind::Rpde; }

SymmetricMatrix to_correlation(const SymmetricMatrix& sigma) {
  const Eigen::VectorXd d = sigma.matrix().diagonal();
  if ((d.array() <= 0.0).any()) throw InvalidInput("correlation needs a positive diagonal");
  const Eigen::VectorXd inv = d.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd r = inv.asDiagonal() * sigma.matrix() * inv.asDiagonal();
  r.diagonal().setOnes();
  return SymmetricMatrix(r);
}

namespace {

std::optional<SymmetricMatrix> try_rate(const PilotEstimate& pilot, double lambda, Index n) {
  try {
    return rate_estimate(pilot, lambda, n);
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

}  // namespace

SolverConfig solver_config(const PilotEstimate& pilot, Index n, const EstimatorSpec& spec) {
  if (!uses_solver(spec.kind)) throw InvalidInput(to_string(spec.kind) + " does not use the solver");
  SolverConfig c;
  c.lambda = spec.lambda;
  c.kappa = spec.kappa;
  c.tau = spec.tau;
  c.mu = spec.mu;
  c.epsilon = spec.epsilon;
  c.max_iters = spec.max_iters;
  c.accept_feasible_start = spec.accept_feasible_start;
  c.record_trace = false;

  switch (spec.kind) {
    case EstimatorKind::Rws: c.variant = Variant::RWS; break;
    case EstimatorKind::Rpde: c.variant = Variant::RPDE; break;
    case EstimatorKind::Correlation: c.variant = Variant::Correlation; break;
    case EstimatorKind::Arws1:
      c.variant = Variant::ARWS;
      c.weights = pilot.sigma.matrix().cwiseAbs();
      break;
    case EstimatorKind::Arws2: {
      c.variant = Variant::ARWS;
      const auto rate = rate_estimate(pilot, spec.rate_lambda, n);
      c.weights = (rate.matrix().cwiseAbs().array() + 1.0 / static_cast<double>(n)).inverse().matrix();
      break;
    }
    default: break;
  }
  if (spec.warm_start_rate) {
    if (spec.kind == EstimatorKind::Correlation) {
      if (auto rate = try_rate(pilot, spec.rate_lambda, n)) c.warm_start = to_correlation(*rate);
    } else {
      c.warm_start = try_rate(pilot, spec.rate_lambda, n);
    }
  }
  return c;
}

FitResult fit(const PilotEstimate& pilot, Index n, const EstimatorSpec& spec) {
  switch (spec.kind) {
    case EstimatorKind::Sample: return {pilot.sigma, pilot.sigma, std::nullopt};
    case EstimatorKind::Rate: {
      auto r = rate_estimate(pilot, spec.lambda, n);
      return {r, r, std::nullopt};
    }
    default: break;
  }
  const SolverConfig config = solver_config(pilot, n, spec);
  const SymmetricMatrix target =
      spec.kind == EstimatorKind::Correlation ? to_correlation(pilot.sigma) : pilot.sigma;
  SolveResult r = solve(target, config);
  FitResult out{r.estimate, r.sparse_estimate, std::nullopt};
  out.solve = std::move(r);
  return out;
}

}  // namespace rws
