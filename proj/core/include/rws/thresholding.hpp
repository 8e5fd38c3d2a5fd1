#pragma once

#include "rws/matrix.hpp"
#include "rws/pilot.hpp"

namespace rws {

/// Symmetric, nonnegative, zero-diagonal matrix of per-entry thresholds.
class ThresholdMatrix {
 public:
  /// Throws InvalidInput if t is not square, symmetric and nonnegative.
  /// The diagonal is forced to zero.
  explicit ThresholdMatrix(Eigen::MatrixXd t);
  static ThresholdMatrix uniform(Index p, double t);

  Index dim() const noexcept { return t_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return t_; }
  double operator()(Index i, Index j) const { return t_(i, j); }

 private:
  Eigen::MatrixXd t_;
};

/// sign(a)(|a| - t)_+, i.e. the minimizer of (x - a)^2 / 2 + t |x|.
inline double soft_threshold(double a, double t) {
  if (a > t) return a - t;
  if (a < -t) return a + t;
  return 0.0;
}

/// Off-diagonal soft-thresholding; the diagonal passes through unchanged.
SymmetricMatrix soft_threshold(const SymmetricMatrix& a, const ThresholdMatrix& t);

/// t_ij = lambda * sqrt(s_ii s_jj log p / n) off the diagonal (natural log).
ThresholdMatrix rate_thresholds(const PilotEstimate& pilot, double lambda, Index n);

/// Robust adaptive thresholding estimate: the pilot thresholded entrywise.
SymmetricMatrix rate_estimate(const PilotEstimate& pilot, double lambda, Index n);

}  // namespace rws
