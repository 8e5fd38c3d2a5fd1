#include "rws/projection.hpp"

#include "rws/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace rws {
namespace {

// Numerical eigen solvers return values like -1e-15 for exact zeros.
constexpr double kZeroEigenTol = 1e-12;

void check_kappa(double kappa) {
  if (!(kappa >= 1.0) || std::isinf(kappa)) {
    throw InvalidInput("condition bound kappa must be finite and >= 1");
  }
}

bool is_descending(const Eigen::VectorXd& g) {
  for (Index i = 1; i < g.size(); ++i) {
    if (g(i) > g(i - 1)) return false;
  }
  return true;
}

bool constraint_inactive(const Eigen::VectorXd& g, double kappa) {
  const double lo = g(g.size() - 1);
  if (lo > -kZeroEigenTol && lo <= 0.0) return false;
  return lo > 0.0 && g(0) / lo <= kappa;
}

void fill_clamped(const Eigen::VectorXd& g, double kappa, double nu, CondSpectrum& out) {
  const Index p = g.size();
  const double hi = kappa * nu;
  out.nu_star = nu;
  out.values.resize(p);
  int above = 0;
  int below = 0;
  for (Index i = 0; i < p; ++i) {
    if (g(i) > hi) ++above;
    if (g(i) < nu) ++below;
    out.values(i) = std::clamp(g(i), nu, hi);
  }
  out.alpha_star = above;
  out.beta_star = static_cast<int>(p) + 1 - below;
  out.clipped_high = above;
  out.clipped_low = below;
}

CondSpectrum zero_spectrum(const Eigen::VectorXd& g) {
  CondSpectrum out;
  const Index p = g.size();
  out.values = Eigen::VectorXd::Zero(p);
  out.zero = true;
  out.alpha_star = 0;
  out.beta_star = 1;
  for (Index i = 0; i < p; ++i) {
    if (g(i) > 0.0) ++out.clipped_high;
    if (g(i) < 0.0) ++out.clipped_low;
  }
  return out;
}

// Sweeps the breakpoints {g_i / kappa, g_i : g_i > 0} in ascending order. On
// each open segment the sets "above kappa * nu" (first a indices) and "below
// nu" (indices >= b) are fixed, so the stationarity condition
//   kappa * sum_{i<a} (kappa nu - g_i) + sum_{i>=b} (nu - g_i) = 0
// is linear in nu. `numerator_tail(b)` supplies sum_{i>=b} g_i (or a
// truncated variant). Returns the nu of the first segment whose linear root
// is consistent with it.
template <typename Tail>
double sweep_for_nu(const Eigen::VectorXd& g, double kappa, const std::vector<double>& prefix,
                    Tail numerator_tail, bool exact) {
  const Index p = g.size();
  Index positives = 0;
  while (positives < p && g(positives) > 0.0) ++positives;

  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(2 * positives));
  {
    std::vector<double> scaled;
    std::vector<double> raw;
    scaled.reserve(static_cast<std::size_t>(positives));
    raw.reserve(static_cast<std::size_t>(positives));
    for (Index i = positives - 1; i >= 0; --i) {
      scaled.push_back(g(i) / kappa);
      raw.push_back(g(i));
    }
    std::merge(scaled.begin(), scaled.end(), raw.begin(), raw.end(), std::back_inserter(breaks));
  }
  breaks.push_back(std::numeric_limits<double>::infinity());

  Index a = p;  // pointers only move down as nu grows
  Index b = p;
  double lo = 0.0;
  double fallback = 0.0;
  for (double hi : breaks) {
    if (!(hi > lo)) continue;
    const double probe = std::isinf(hi) ? (lo > 0.0 ? 2.0 * lo : 1.0) : 0.5 * (lo + hi);
    while (a > 0 && !(g(a - 1) > kappa * probe)) --a;
    while (b > 0 && !(g(b - 1) >= probe)) --b;
    const double kk = kappa * kappa;
    const double denom = kk * static_cast<double>(a) + static_cast<double>(p - b);
    const double numer = kappa * prefix[static_cast<std::size_t>(a)] + numerator_tail(b);
    if (exact) {
      // Derivative of the convex objective at the right end of the segment.
      if (std::isinf(hi) || hi * denom - numer >= 0.0) {
        if (denom == 0.0) return lo;
        return std::clamp(numer / denom, lo, hi);
      }
    } else if (denom > 0.0) {
      const double nu = numer / denom;
      if (nu >= lo && nu <= hi) return nu;
      fallback = nu;
    }
    lo = hi;
  }
  return fallback;
}

std::vector<double> prefix_sums(const Eigen::VectorXd& g) {
  std::vector<double> s(static_cast<std::size_t>(g.size()) + 1, 0.0);
  for (Index i = 0; i < g.size(); ++i) {
    s[static_cast<std::size_t>(i) + 1] = s[static_cast<std::size_t>(i)] + g(i);
  }
  return s;
}

}  // namespace

CondSpectrum project_cond_spectrum(const Eigen::VectorXd& g, double kappa) {
  check_kappa(kappa);
  if (g.size() == 0) throw InvalidInput("empty spectrum");
  if (!is_descending(g)) throw InvalidInput("eigenvalues must be sorted descending");
  if (constraint_inactive(g, kappa)) {
    CondSpectrum out;
    fill_clamped(g, kappa, g(g.size() - 1), out);
    out.values = g;
    out.unchanged = true;
    return out;
  }
  double positive = 0.0;
  double negative = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    if (g(i) > 0.0) positive += g(i);
    if (g(i) < 0.0) negative -= g(i);
  }
  // The objective is nondecreasing from nu = 0 on.
  if (kappa * positive <= negative) return zero_spectrum(g);

  const auto prefix = prefix_sums(g);
  const double total = prefix.back();
  const double nu = sweep_for_nu(
      g, kappa, prefix, [&](Index b) { return total - prefix[static_cast<std::size_t>(b)]; },
      true);
  if (!(nu > 0.0)) return zero_spectrum(g);
  CondSpectrum out;
  fill_clamped(g, kappa, nu, out);
  return out;
}

CondSpectrum project_cond_spectrum_truncated(const Eigen::VectorXd& g, double kappa) {
  check_kappa(kappa);
  if (g.size() == 0) throw InvalidInput("empty spectrum");
  if (!is_descending(g)) throw InvalidInput("eigenvalues must be sorted descending");
  if (constraint_inactive(g, kappa)) {
    CondSpectrum out;
    fill_clamped(g, kappa, g(g.size() - 1), out);
    out.values = g;
    out.unchanged = true;
    return out;
  }
  if (!(g(0) > 0.0)) return zero_spectrum(g);
  Index s = 0;
  while (s < g.size() && g(s) > 0.0) ++s;
  const auto prefix = prefix_sums(g);
  const double nu = sweep_for_nu(
      g, kappa, prefix,
      [&](Index b) {
        const Index from = std::min(b, s);
        return prefix[static_cast<std::size_t>(s)] - prefix[static_cast<std::size_t>(from)];
      },
      false);
  CondSpectrum out;
  fill_clamped(g, kappa, nu, out);
  return out;
}

namespace detail {

bool project_cond_inplace(Eigen::MatrixXd& y, double kappa, CondSpectrum* info) {
  const EigenDecomposition eig = sym_eig(y);
  CondSpectrum spec = project_cond_spectrum(eig.values, kappa);
  const bool modified = !spec.unchanged;
  if (spec.zero) {
    y.setZero();
  } else if (modified) {
    y = eig.reconstruct(spec.values);
  }
  if (info) *info = std::move(spec);
  return modified;
}

bool project_floor_inplace(Eigen::MatrixXd& y, double tau) {
  const EigenDecomposition eig = sym_eig(y);
  if (eig.values(eig.values.size() - 1) >= tau) return false;
  y = eig.reconstruct(eig.values.cwiseMax(tau));
  return true;
}

}  // namespace detail

CondProjectionResult project_cond(const SymmetricMatrix& y, double kappa) {
  check_kappa(kappa);
  Eigen::MatrixXd m = y.matrix();
  CondSpectrum spec;
  const bool modified = detail::project_cond_inplace(m, kappa, &spec);
  CondProjectionResult out;
  out.projected = modified ? SymmetricMatrix(m) : y;
  out.nu_star = spec.zero ? 0.0 : spec.nu_star;
  out.alpha_star = spec.alpha_star;
  out.beta_star = spec.beta_star;
  out.clipped_low = spec.clipped_low;
  out.clipped_high = spec.clipped_high;
  out.unchanged = spec.unchanged;
  return out;
}

SymmetricMatrix project_floor(const SymmetricMatrix& y, double tau) {
  if (!(tau > 0.0) || std::isinf(tau)) throw InvalidInput("project_floor: tau must be positive");
  Eigen::MatrixXd m = y.matrix();
  if (!detail::project_floor_inplace(m, tau)) return y;
  return SymmetricMatrix(m);
}

SymmetricMatrix project_interval(const SymmetricMatrix& y, double tau1, double tau2) {
  if (!(tau1 > 0.0) || !(tau2 >= tau1) || std::isinf(tau2)) {
    throw InvalidInput("project_interval: need 0 < tau1 <= tau2");
  }
  const EigenDecomposition eig = sym_eig(y);
  const Index p = eig.values.size();
  if (eig.values(0) <= tau2 && eig.values(p - 1) >= tau1) return y;
  return SymmetricMatrix(eig.reconstruct(eig.values.cwiseMax(tau1).cwiseMin(tau2)));
}

}  // namespace rws
