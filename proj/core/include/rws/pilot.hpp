#pragma once

#include "rws/data.hpp"
#include "rws/matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace rws {

enum class PilotMethod { Sample, Rank, Huber, MedianOfMeans };

std::string to_string(PilotMethod m);
PilotMethod parse_pilot_method(const std::string& name);

/// 1 / Phi^{-1}(0.75): makes the MAD consistent for the normal sd.
inline constexpr double kMadConsistency = 1.4826;

/// Robustification level of the Huber mean. By default each estimated mean
/// gets its own H = constant * sd(z) * sqrt(n / log p), with sd the
/// MAD-based scale of the values z being averaged. `shared_h` overrides this
/// with one H for every entry.
struct HuberTuning {
  double constant = 1.0;
  std::optional<double> shared_h;
};

struct MomOptions {
  int groups = 1;
  /// Shuffle row order (one shared permutation) before forming groups.
  bool shuffle = false;
  std::uint64_t seed = 0;
};

/// Parameters recorded by the pilot builders.
struct PilotParams {
  double fisher_constant = 0.0;  // Rank
  Eigen::MatrixXd huber_h;       // Huber: H used for the (i, j) cross moment
  Eigen::VectorXd huber_h_mean;  // Huber: H used for the mean of column i
  int groups = 0;                // MedianOfMeans
};

struct PilotEstimate {
  SymmetricMatrix sigma;
  /// sigma_ii as used by entry-dependent thresholds.
  Eigen::VectorXd diag_scale;
  PilotMethod method = PilotMethod::Sample;
  PilotParams params;
};

/// (1/n) sum (x_i - xbar)(x_i - xbar)^T.
PilotEstimate sample_covariance(const DataMatrix& x);

/// D R D with D = diag(C * MAD_u) and R_ij = sin(pi * tau_ij / 2), where tau
/// is Kendall's tau-a. Throws DegenerateScale when some MAD is zero unless
/// allow_degenerate_scale is set, in which case the MAD is floored at 1e-12.
PilotEstimate rank_pilot(const DataMatrix& x, double fisher_constant = kMadConsistency,
                         bool allow_degenerate_scale = false);

PilotEstimate huber_pilot(const DataMatrix& x, const HuberTuning& tuning = {});

PilotEstimate mom_pilot(const DataMatrix& x, const MomOptions& options);

// Scalar building blocks, exposed for testing.

double median(std::span<const double> values);
/// Median absolute deviation about the median (unscaled).
double mad(std::span<const double> values);
/// Kendall's tau-a by the O(n^2) pair count.
double kendall_tau(std::span<const double> a, std::span<const double> b);
/// Root of sum_k psi_H(z_k - mu) = 0, psi_H(t) = clamp(t, -H, H).
double huber_mean(std::span<const double> z, double h);
/// Median of the means of `groups` contiguous blocks whose sizes differ by at
/// most one (larger blocks first).
double median_of_means(std::span<const double> z, int groups);

}  // namespace rws
