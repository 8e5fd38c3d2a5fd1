#include "rws/pilot.hpp"

#include "rws/errors.hpp"
#include "rws/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace rws {

std::string to_string(PilotMethod m) {
  switch (m) {
    case PilotMethod::Sample: return "sample";
    case PilotMethod::Rank: return "rank";
    case PilotMethod::Huber: return "huber";
    case PilotMethod::MedianOfMeans: return "mom";
  }
  return "unknown";
}

PilotMethod parse_pilot_method(const std::string& name) {
  if (name == "sample") return PilotMethod::Sample;
  if (name == "rank") return PilotMethod::Rank;
  if (name == "huber") return PilotMethod::Huber;
  if (name == "mom") return PilotMethod::MedianOfMeans;
  throw InvalidInput("unknown pilot method '" + name + "'");
}

double median(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("median of empty set");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

double mad(std::span<const double> values) {
  const double m = median(values);
  std::vector<double> dev(values.size());
  std::transform(values.begin(), values.end(), dev.begin(),
                 [m](double v) { return std::abs(v - m); });
  return median(dev);
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("kendall_tau: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw InsufficientData("kendall_tau needs at least two observations");
  long long score = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double da = a[j] - a[i];
      const double db = b[j] - b[i];
      const int s = (da > 0) - (da < 0);
      const int t = (db > 0) - (db < 0);
      score += s * t;
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(score) / pairs;
}

double huber_mean(std::span<const double> z, double h) {
  if (z.empty()) throw InvalidInput("huber_mean of empty set");
  if (!(h > 0.0)) throw InvalidInput("huber_mean: H must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(z.begin(), z.end());
  double lo = *lo_it;
  double hi = *hi_it;
  const double n = static_cast<double>(z.size());
  // psi is linear on every residual once H covers the data range.
  if (h >= hi - lo) return std::accumulate(z.begin(), z.end(), 0.0) / n;

  auto estimating = [&](double mu) {
    double s = 0.0;
    for (double v : z) s += std::clamp(v - mu, -h, h);
    return s;
  };
  const double tol = 1e-10 * n * h;
  // estimating() is continuous and nonincreasing with estimating(lo) >= 0 >=
  // estimating(hi).
  for (int step = 0; step < 200; ++step) {
    const double mid = 0.5 * (lo + hi);
    // Bracket exhausted at double resolution; the root lies inside it.
    if (mid <= lo || mid >= hi) return mid;
    const double g = estimating(mid);
    if (std::abs(g) <= tol) return mid;
    if (g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw SolverFailure("huber_mean: bisection did not converge");
}

double median_of_means(std::span<const double> z, int groups) {
  const auto n = static_cast<int>(z.size());
  if (groups < 1 || groups > n) {
    throw InvalidInput("median_of_means: need 1 <= M <= n, got M = " + std::to_string(groups));
  }
  const int base = n / groups;
  const int extra = n % groups;
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(groups));
  int start = 0;
  for (int g = 0; g < groups; ++g) {
    const int size = base + (g < extra ? 1 : 0);
    double s = 0.0;
    for (int k = start; k < start + size; ++k) s += z[static_cast<std::size_t>(k)];
    means.push_back(s / size);
    start += size;
  }
  return median(means);
}

PilotEstimate sample_covariance(const DataMatrix& x) {
  const auto& v = x.values();
  const double n = static_cast<double>(x.n());
  const Eigen::MatrixXd centered = v.rowwise() - v.colwise().mean();
  PilotEstimate out;
  out.sigma = SymmetricMatrix((centered.transpose() * centered) / n);
  out.diag_scale = out.sigma.matrix().diagonal();
  out.method = PilotMethod::Sample;
  return out;
}

PilotEstimate rank_pilot(const DataMatrix& x, double fisher_constant,
                         bool allow_degenerate_scale) {
  if (!(fisher_constant > 0.0)) throw InvalidInput("rank_pilot: C_u must be positive");
  const Index p = x.p();
  const Index n = x.n();
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(p));
  Eigen::VectorXd scale(p);
  for (Index u = 0; u < p; ++u) {
    auto& c = cols[static_cast<std::size_t>(u)];
    c.assign(x.col(u).data(), x.col(u).data() + n);
    double m = mad(c);
    if (m == 0.0) {
      if (!allow_degenerate_scale) throw DegenerateScale(static_cast<std::size_t>(u));
      m = 1e-12;
    }
    scale(u) = fisher_constant * m;
  }
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double tau = kendall_tau(cols[static_cast<std::size_t>(i)],
                                     cols[static_cast<std::size_t>(j)]);
      r(i, j) = r(j, i) = std::sin(std::numbers::pi * tau / 2.0);
    }
  }
  PilotEstimate out;
  out.sigma = SymmetricMatrix(scale.asDiagonal() * r * scale.asDiagonal());
  out.diag_scale = scale.array().square();
  out.method = PilotMethod::Rank;
  out.params.fisher_constant = fisher_constant;
  return out;
}

namespace {

double adaptive_h(std::span<const double> z, const HuberTuning& tuning, double log_p) {
  if (tuning.shared_h) return *tuning.shared_h;
  if (!(log_p > 0.0)) return std::numeric_limits<double>::infinity();
  const double sd = kMadConsistency * mad(z);
  return tuning.constant * sd * std::sqrt(static_cast<double>(z.size()) / log_p);
}

// H == 0 arises when more than half of z coincide; the Huber mean then tends
// to the median.
double robust_mean(std::span<const double> z, double h) {
  if (std::isinf(h)) return std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(z.size());
  if (!(h > 0.0)) return median(z);
  return huber_mean(z, h);
}

}  // namespace

PilotEstimate huber_pilot(const DataMatrix& x, const HuberTuning& tuning) {
  if (tuning.shared_h && !(*tuning.shared_h > 0.0)) {
    throw InvalidInput("huber_pilot: shared H must be positive");
  }
  if (!(tuning.constant > 0.0)) throw InvalidInput("huber_pilot: constant must be positive");
  const Index p = x.p();
  const Index n = x.n();
  const double log_p = std::log(static_cast<double>(p));
  const auto& v = x.values();

  PilotEstimate out;
  out.method = PilotMethod::Huber;
  out.params.huber_h.resize(p, p);
  out.params.huber_h_mean.resize(p);

  Eigen::VectorXd mean(p);
  std::vector<double> z(static_cast<std::size_t>(n));
  for (Index i = 0; i < p; ++i) {
    for (Index k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = v(k, i);
    const double h = adaptive_h(z, tuning, log_p);
    out.params.huber_h_mean(i) = h;
    mean(i) = robust_mean(z, h);
  }
  Eigen::MatrixXd s(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i; j < p; ++j) {
      for (Index k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = v(k, i) * v(k, j);
      const double h = adaptive_h(z, tuning, log_p);
      out.params.huber_h(i, j) = out.params.huber_h(j, i) = h;
      s(i, j) = s(j, i) = robust_mean(z, h) - mean(i) * mean(j);
    }
  }
  out.sigma = SymmetricMatrix(s);
  out.diag_scale = out.sigma.matrix().diagonal();
  return out;
}

PilotEstimate mom_pilot(const DataMatrix& x, const MomOptions& options) {
  const Index p = x.p();
  const Index n = x.n();
  if (options.groups < 1 || options.groups > n) {
    throw InvalidInput("mom_pilot: need 1 <= M <= n, got M = " + std::to_string(options.groups));
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  if (options.shuffle) {
    auto rng = make_rng(options.seed, Stream::Shuffle);
    std::shuffle(order.begin(), order.end(), rng);
  }
  const auto& v = x.values();
  Eigen::VectorXd mean(p);
  std::vector<double> z(static_cast<std::size_t>(n));
  for (Index i = 0; i < p; ++i) {
    for (Index k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = v(order[static_cast<std::size_t>(k)], i);
    mean(i) = median_of_means(z, options.groups);
  }
  Eigen::MatrixXd s(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i; j < p; ++j) {
      for (Index k = 0; k < n; ++k) {
        const Index r = order[static_cast<std::size_t>(k)];
        z[static_cast<std::size_t>(k)] = v(r, i) * v(r, j);
      }
      s(i, j) = s(j, i) = median_of_means(z, options.groups) - mean(i) * mean(j);
    }
  }
  PilotEstimate out;
  out.sigma = SymmetricMatrix(s);
  out.diag_scale = out.sigma.matrix().diagonal();
  out.method = PilotMethod::MedianOfMeans;
  out.params.groups = options.groups;
  return out;
}

}  // namespace rws
