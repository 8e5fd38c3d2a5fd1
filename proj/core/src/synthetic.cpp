#include "rws/synthetic.hpp"

#include "rws/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rws {

std::string to_string(Structure s) {
  return s == Structure::Banded ? "banded" : "block";
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::Normal: return "normal";
    case Distribution::T35: return "t35";
    case Distribution::SkewT4: return "skewt4";
    case Distribution::ContamT5: return "ct5";
  }
  return "unknown";
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Symmetric square root factor F with F F^T = m; m must be PSD up to rounding.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& m) {
  const auto eig = detail::sym_eig(m);
  return eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

Eigen::MatrixXd cholesky_factor(const SymmetricMatrix& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma.matrix());
  if (llt.info() != Eigen::Success) throw InvalidInput("true covariance must be positive definite");
  return llt.matrixL();
}

Eigen::VectorXd std_normal(std::mt19937_64& rng, Index p) {
  std::normal_distribution<double> z;
  Eigen::VectorXd v(p);
  for (Index j = 0; j < p; ++j) v(j) = z(rng);
  return v;
}

// sqrt(W / df) with W ~ chi-square(df).
double chi_scale(std::mt19937_64& rng, double df) {
  std::chi_squared_distribution<double> chi(df);
  return std::sqrt(chi(rng) / df);
}

}  // namespace

Structure parse_structure(const std::string& name) {
  const auto s = lower(name);
  if (s == "banded") return Structure::Banded;
  if (s == "block" || s == "blockdiagonal" || s == "block_diagonal") return Structure::BlockDiagonal;
  throw InvalidInput("unknown structure '" + name + "'");
}

Distribution parse_distribution(const std::string& name) {
  const auto s = lower(name);
  if (s == "normal") return Distribution::Normal;
  if (s == "t35" || s == "t3.5") return Distribution::T35;
  if (s == "skewt4" || s == "st4") return Distribution::SkewT4;
  if (s == "ct5" || s == "contamt5") return Distribution::ContamT5;
  throw InvalidInput("unknown distribution '" + name + "'");
}

void validate(const ScenarioSpec& spec) {
  if (spec.n < 1 || spec.p < 1 || spec.reps < 1) {
    throw InvalidInput("scenario sizes n, p and reps must be positive");
  }
  if (spec.structure == Structure::BlockDiagonal && spec.p % 2 != 0) {
    throw InvalidInput("block-diagonal structure needs an even p");
  }
}

SymmetricMatrix true_covariance(const ScenarioSpec& spec) {
  validate(spec);
  const Index p = spec.p;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
  if (spec.structure == Structure::Banded) {
    for (Index j = 0; j < p; ++j) {
      for (Index i = 0; i < p; ++i) {
        s(i, j) = std::max(1.0 - static_cast<double>(std::abs(i - j)) / 10.0, 0.0);
      }
    }
    return SymmetricMatrix(s);
  }
  const Index h = p / 2;
  auto rng = make_rng(spec.seed, Stream::Structure);
  std::uniform_real_distribution<double> unif(0.3, 0.8);
  std::bernoulli_distribution keep(0.2);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(h, h);
  for (Index j = 0; j < h; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double u = unif(rng);
      const bool b = keep(rng);
      a(i, j) = b ? u : 0.0;
      a(j, i) = a(i, j);
    }
  }
  const double lo = detail::sym_eig(a).values(h - 1);
  const double delta = std::max(-lo, 0.0) + 0.001;
  s.topLeftCorner(h, h) = a + delta * Eigen::MatrixXd::Identity(h, h);
  s.bottomRightCorner(h, h) = 4.0 * Eigen::MatrixXd::Identity(h, h);
  return SymmetricMatrix(s);
}

Eigen::MatrixXd normal_rows(std::mt19937_64& rng, Index n, const Eigen::VectorXd& mean,
                            const SymmetricMatrix& sigma) {
  const Eigen::MatrixXd l = cholesky_factor(sigma);
  Eigen::MatrixXd x(n, sigma.dim());
  for (Index i = 0; i < n; ++i) x.row(i) = (mean + l * std_normal(rng, sigma.dim())).transpose();
  return x;
}

Draw sample_draw(const ScenarioSpec& spec, const SymmetricMatrix& sigma_star, int rep) {
  validate(spec);
  if (sigma_star.dim() != spec.p) throw InvalidInput("true covariance dimension mismatch");
  const Index n = spec.n;
  const Index p = spec.p;
  const Eigen::MatrixXd l = cholesky_factor(sigma_star);
  auto rng = make_rng(spec.seed, Stream::Data, static_cast<std::uint64_t>(rep));
  Eigen::MatrixXd x(n, p);
  std::vector<bool> marked(static_cast<std::size_t>(n), false);

  auto t_factor = [&](double df) {
    const double matched = spec.covariance_matched ? std::sqrt((df - 2.0) / df) : 1.0;
    return matched / chi_scale(rng, df);
  };

  switch (spec.distribution) {
    case Distribution::Normal:
      for (Index i = 0; i < n; ++i) x.row(i) = (l * std_normal(rng, p)).transpose();
      break;
    case Distribution::T35:
      for (Index i = 0; i < n; ++i) {
        const Eigen::VectorXd z = l * std_normal(rng, p);
        x.row(i) = (z * t_factor(3.5)).transpose();
      }
      break;
    case Distribution::SkewT4: {
      // Skew-normal with shape 10 * 1 on the correlation scale, divided by an
      // independent chi scale with 4 df, then rescaled by the marginal sds.
      const Eigen::VectorXd omega = sigma_star.matrix().diagonal().cwiseSqrt();
      const Eigen::VectorXd inv = omega.cwiseInverse();
      const Eigen::MatrixXd corr = inv.asDiagonal() * sigma_star.matrix() * inv.asDiagonal();
      const Eigen::VectorXd alpha = Eigen::VectorXd::Constant(p, 10.0);
      const Eigen::VectorXd ca = corr * alpha;
      const Eigen::VectorXd delta = ca / std::sqrt(1.0 + alpha.dot(ca));
      const Eigen::MatrixXd f = psd_factor(corr - delta * delta.transpose());
      std::normal_distribution<double> z0;
      for (Index i = 0; i < n; ++i) {
        const double u0 = std::abs(z0(rng));
        const Eigen::VectorXd v = f * std_normal(rng, p);
        const Eigen::VectorXd sn = delta * u0 + v;
        const double w = chi_scale(rng, 4.0);
        x.row(i) = (omega.cwiseProduct(sn) / w).transpose();
      }
      break;
    }
    case Distribution::ContamT5: {
      std::bernoulli_distribution contaminate(0.1);
      for (Index i = 0; i < n; ++i) {
        const bool b = contaminate(rng);
        marked[static_cast<std::size_t>(i)] = b;
        if (b) {
          x.row(i) = (std_normal(rng, p).array() - 5.0).matrix().transpose();
        } else {
          const Eigen::VectorXd z = l * std_normal(rng, p);
          x.row(i) = (z * t_factor(5.0)).transpose();
        }
      }
      break;
    }
  }
  return {DataMatrix(std::move(x)), std::move(marked)};
}

DataMatrix sample(const ScenarioSpec& spec, const SymmetricMatrix& sigma_star, int rep) {
  return sample_draw(spec, sigma_star, rep).data;
}

}  // namespace rws
