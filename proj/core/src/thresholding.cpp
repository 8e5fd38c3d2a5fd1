#include "rws/thresholding.hpp"

#include "rws/errors.hpp"

#include <cmath>

namespace rws {

ThresholdMatrix::ThresholdMatrix(Eigen::MatrixXd t) : t_(std::move(t)) {
  if (t_.rows() != t_.cols()) throw InvalidInput("threshold matrix must be square");
  t_.diagonal().setZero();
  if ((t_.array() < 0.0).any() || t_.array().isNaN().any()) {
    throw InvalidInput("thresholds must be nonnegative");
  }
  if (t_ != t_.transpose()) throw InvalidInput("threshold matrix must be symmetric");
}

ThresholdMatrix ThresholdMatrix::uniform(Index p, double t) {
  if (!(t >= 0.0)) throw InvalidInput("threshold must be nonnegative");
  return ThresholdMatrix(Eigen::MatrixXd::Constant(p, p, t));
}

SymmetricMatrix soft_threshold(const SymmetricMatrix& a, const ThresholdMatrix& t) {
  if (a.dim() != t.dim()) throw InvalidInput("soft_threshold: dimension mismatch");
  const Index p = a.dim();
  Eigen::MatrixXd out = a.matrix();
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (i != j) out(i, j) = soft_threshold(a(i, j), t(i, j));
    }
  }
  return SymmetricMatrix(out);
}

ThresholdMatrix rate_thresholds(const PilotEstimate& pilot, double lambda, Index n) {
  if (!(lambda >= 0.0)) throw InvalidInput("rate_thresholds: lambda must be nonnegative");
  if (n < 1) throw InvalidInput("rate_thresholds: n must be positive");
  const auto& d = pilot.diag_scale;
  const Index p = d.size();
  if (p != pilot.sigma.dim()) throw InvalidInput("rate_thresholds: diag_scale size mismatch");
  if ((d.array() <= 0.0).any()) {
    throw InvalidInput("rate_thresholds: pilot diagonal scale must be strictly positive");
  }
  const double factor = std::log(static_cast<double>(p)) / static_cast<double>(n);
  Eigen::MatrixXd t(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      t(i, j) = (i == j) ? 0.0 : lambda * std::sqrt(d(i) * d(j) * factor);
    }
  }
  // d(i) * d(j) and d(j) * d(i) round identically, so t is exactly symmetric.
  return ThresholdMatrix(std::move(t));
}

SymmetricMatrix rate_estimate(const PilotEstimate& pilot, double lambda, Index n) {
  if (std::isinf(lambda)) {
    return SymmetricMatrix(Eigen::MatrixXd(pilot.sigma.matrix().diagonal().asDiagonal()));
  }
  return soft_threshold(pilot.sigma, rate_thresholds(pilot, lambda, n));
}

}  // namespace rws
