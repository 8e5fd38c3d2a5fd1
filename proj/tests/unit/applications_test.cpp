#include "rws/applications.hpp"
#include "rws/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace rws {
namespace {

struct Labeled {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

Labeled two_classes(std::mt19937_64& rng, Index per_class, Index p, double shift) {
  std::normal_distribution<double> z;
  Labeled d;
  d.x.resize(2 * per_class, p);
  for (Index i = 0; i < 2 * per_class; ++i) {
    const int label = i < per_class ? 0 : 1;
    d.y.push_back(label);
    for (Index j = 0; j < p; ++j) d.x(i, j) = z(rng) + label * shift;
  }
  return d;
}

TEST(Lda, SeparatedClassesAreClassifiedPerfectly) {
  std::mt19937_64 rng(1);
  const auto train = two_classes(rng, 30, 4, 10.0);
  const auto test = two_classes(rng, 30, 4, 10.0);
  const auto r = lda_fit_predict(train.x, train.y, test.x, test.y, SymmetricMatrix::identity(4));
  EXPECT_EQ(r.error_rate, 0.0);
}

TEST(Lda, DiscriminantHandCase) {
  Eigen::MatrixXd x(4, 1);
  x << -1, 1, 3, 5;
  const LdaModel m(x, {0, 0, 1, 1}, SymmetricMatrix::identity(1));
  Eigen::VectorXd at(1);
  at << 2.0;
  EXPECT_NEAR(m.discriminant(at), 0.0, 1e-15);
  EXPECT_EQ(m.predict(at), 0);
  at << 0.0;
  EXPECT_NEAR(m.discriminant(at), 8.0, 1e-14);
  EXPECT_EQ(m.predict(at), 0);
  at << 4.0;
  EXPECT_EQ(m.predict(at), 1);
}

TEST(Lda, RejectsIndefiniteCovarianceAndOneClass) {
  Eigen::MatrixXd x(4, 2);
  x.setRandom();
  EXPECT_THROW(LdaModel(x, {0, 0, 1, 1}, SymmetricMatrix::zero(2)), NotPositiveDefinite);
  EXPECT_THROW(LdaModel(x, {0, 0, 0, 0}, SymmetricMatrix::identity(2)), InvalidInput);
}

TEST(PooledCovariance, RemovesClassMeans) {
  Eigen::MatrixXd x(4, 1);
  x << -1, 1, 9, 11;
  const auto p = pooled_covariance(x, {0, 0, 1, 1});
  EXPECT_DOUBLE_EQ(p.sigma(0, 0), 1.0);
}

TEST(MinVarianceWeights, HandCases) {
  const auto eq = min_variance_weights(SymmetricMatrix::identity(4));
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(eq(i), 0.25, 1e-15);
  Eigen::VectorXd d(2);
  d << 1.0, 4.0;
  const auto w = min_variance_weights(SymmetricMatrix::diagonal(d));
  EXPECT_NEAR(w(0), 0.8, 1e-15);
  EXPECT_NEAR(w(1), 0.2, 1e-15);
  EXPECT_THROW(min_variance_weights(SymmetricMatrix::zero(2)), NotPositiveDefinite);
}

TEST(MinVarianceWeights, MatchesKktSystemAndIsScaleInvariant) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd s = oracle::random_pd(rng, 8);
    const auto w = min_variance_weights(SymmetricMatrix(s));
    EXPECT_LT((w - oracle::min_variance_kkt(s)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(w.sum(), 1.0, 1e-14);
    const auto w5 = min_variance_weights(SymmetricMatrix(5.0 * s));
    EXPECT_LT((w - w5).cwiseAbs().maxCoeff(), 1e-12);
  }
}

BacktestSpec floor_backtest(Eigen::MatrixXd returns, Index window) {
  BacktestSpec b;
  b.returns = std::move(returns);
  b.window = window;
  b.estimator.kind = EstimatorKind::Rpde;
  b.estimator.lambda = 0.01;
  b.estimator.tau = 0.1;
  b.estimator.warm_start_rate = false;
  return b;
}

TEST(Backtest, ConstantReturnsGiveInfiniteSharpe) {
  const auto r = backtest(floor_backtest(Eigen::MatrixXd::Constant(15, 3, 0.01), 10));
  ASSERT_EQ(r.returns.size(), 5u);
  for (double v : r.returns) EXPECT_NEAR(v, 0.01, 1e-12);
  EXPECT_EQ(r.sd_percent, 0.0);
  EXPECT_TRUE(std::isinf(r.sharpe_percent));
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Backtest, OneStepPastWindow) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.0, 0.02);
  Eigen::MatrixXd x(21, 4);
  for (Index j = 0; j < 4; ++j) {
    for (Index i = 0; i < 21; ++i) x(i, j) = z(rng);
  }
  const auto r = backtest(floor_backtest(x, 20));
  ASSERT_EQ(r.returns.size(), 1u);
  EXPECT_EQ(r.periods.front(), 20);
}

TEST(Backtest, Deterministic) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z(0.0, 0.02);
  Eigen::MatrixXd x(40, 5);
  for (Index j = 0; j < 5; ++j) {
    for (Index i = 0; i < 40; ++i) x(i, j) = z(rng);
  }
  auto spec = floor_backtest(x, 25);
  spec.estimator.kind = EstimatorKind::Rws;
  spec.estimator.kappa = 50.0;
  spec.estimator.warm_start_rate = true;
  const auto a = backtest(spec);
  const auto b = backtest(spec);
  EXPECT_EQ(a.returns, b.returns);
  EXPECT_EQ(a.returns.size(), 15u);
}

TEST(Backtest, RejectsShortSeries) {
  EXPECT_THROW(backtest(floor_backtest(Eigen::MatrixXd::Zero(10, 2), 10)), InvalidInput);
}

}  // namespace
}  // namespace rws
