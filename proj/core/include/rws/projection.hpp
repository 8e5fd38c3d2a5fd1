#pragma once

#include "rws/matrix.hpp"

namespace rws {

/// Outcome of the eigenvalue-level condition-number projection.
///
/// With eigenvalues g_1 >= ... >= g_p, the nearest point of
/// {Y >= 0 : cond(Y) <= kappa} (0 included as the degenerate limit) keeps the
/// eigenvectors and maps g_i to clamp(g_i, nu, kappa * nu), where nu >= 0
/// minimizes sum_i (clamp(g_i, nu, kappa * nu) - g_i)^2.
struct CondSpectrum {
  Eigen::VectorXd values;  // projected eigenvalues, same order as the input
  double nu_star = 0.0;
  int alpha_star = 0;    // eigenvalues strictly above kappa * nu (lowered)
  int beta_star = 0;     // 1-based: p + 1 - (eigenvalues strictly below nu)
  int clipped_low = 0;   // eigenvalues raised to nu
  int clipped_high = 0;  // eigenvalues lowered to kappa * nu
  bool unchanged = false;
  bool zero = false;
};

/// `eigenvalues` must be sorted descending. Runs in O(p).
CondSpectrum project_cond_spectrum(const Eigen::VectorXd& eigenvalues, double kappa);

/// The closed form exactly as usually stated for the indefinite case, whose
/// numerator drops the nonpositive eigenvalues while the denominator still
/// counts them. Agrees with project_cond_spectrum whenever the smallest
/// eigenvalue is positive; kept for comparison only.
CondSpectrum project_cond_spectrum_truncated(const Eigen::VectorXd& eigenvalues, double kappa);

struct CondProjectionResult {
  SymmetricMatrix projected;
  double nu_star = 0.0;
  int alpha_star = 0;
  int beta_star = 0;
  int clipped_low = 0;
  int clipped_high = 0;
  bool unchanged = false;
};

/// Frobenius projection onto {Y >= 0 : cond(Y) <= kappa}. Returns the input
/// bit-for-bit when it already satisfies the constraint and 0 when no
/// positive nu improves on it. Throws InvalidInput for kappa < 1.
CondProjectionResult project_cond(const SymmetricMatrix& y, double kappa);

/// Nearest matrix with all eigenvalues >= tau.
SymmetricMatrix project_floor(const SymmetricMatrix& y, double tau);

/// Nearest matrix with all eigenvalues in [tau1, tau2].
SymmetricMatrix project_interval(const SymmetricMatrix& y, double tau1, double tau2);

namespace detail {
// In-place variants on raw matrices for the solver loop. Return true when the
// matrix was modified.
bool project_cond_inplace(Eigen::MatrixXd& y, double kappa, CondSpectrum* info = nullptr);
bool project_floor_inplace(Eigen::MatrixXd& y, double tau);
}  // namespace detail

}  // namespace rws
