#include "rws/errors.hpp"
#include "rws/matrix.hpp"
#include "rws/synthetic.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace rws {
namespace {

TEST(SymmetricMatrix, SymmetrizesInput) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 4, 3;
  const SymmetricMatrix s(a);
  EXPECT_EQ(s(0, 1), 3.0);
  EXPECT_EQ(s(1, 0), 3.0);
}

TEST(SymmetricMatrix, RejectsBadShapes) {
  EXPECT_THROW(SymmetricMatrix(Eigen::MatrixXd(2, 3)), InvalidInput);
  EXPECT_THROW(SymmetricMatrix(Eigen::MatrixXd(0, 0)), InvalidInput);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Identity(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SymmetricMatrix{nan}, InvalidInput);
}

TEST(SymEig, IdentityAndDiagonal) {
  const auto id = sym_eig(SymmetricMatrix::identity(3));
  EXPECT_TRUE(id.values.isApprox(Eigen::VectorXd::Ones(3)));
  EXPECT_TRUE(id.reconstruct().isApprox(Eigen::MatrixXd::Identity(3, 3)));

  const auto d = sym_eig(SymmetricMatrix::diagonal(Eigen::Vector3d(3, 1, 2)));
  EXPECT_NEAR(d.values(0), 3.0, 1e-14);
  EXPECT_NEAR(d.values(1), 2.0, 1e-14);
  EXPECT_NEAR(d.values(2), 1.0, 1e-14);
}

TEST(SymEig, ReconstructsRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd a = oracle::random_symmetric(rng, 1 + trial % 9);
    const auto eig = sym_eig(SymmetricMatrix(a));
    EXPECT_LE((eig.reconstruct() - a).norm(), 1e-8 * std::max(1.0, a.norm()));
    for (Index i = 1; i < eig.values.size(); ++i) EXPECT_GE(eig.values(i - 1), eig.values(i));
  }
}

TEST(MatrixNorms, HandCases) {
  const auto id = matrix_norms(SymmetricMatrix::identity(2));
  EXPECT_DOUBLE_EQ(id.spectral, 1.0);
  EXPECT_DOUBLE_EQ(id.frobenius, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(id.l1_off, 0.0);

  Eigen::MatrixXd anti(2, 2);
  anti << 0, 2, 2, 0;
  const auto n = matrix_norms(SymmetricMatrix(anti));
  EXPECT_NEAR(n.spectral, 2.0, 1e-14);
  EXPECT_NEAR(n.frobenius, 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(n.max_abs, 2.0);
  EXPECT_DOUBLE_EQ(n.l1_off, 4.0);
}

TEST(MatrixNorms, FrobeniusMatchesDirectSum) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd a = oracle::random_symmetric(rng, 5);
  double sum = 0.0;
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) sum += a(i, j) * a(i, j);
  }
  EXPECT_NEAR(matrix_norms(SymmetricMatrix(a)).frobenius, std::sqrt(sum), 1e-12);
}

TEST(MatrixNorms, SpectralEqualsFrobeniusForRankOne) {
  const Eigen::Vector4d v(1, -2, 0.5, 3);
  const auto n = matrix_norms(SymmetricMatrix(v * v.transpose()));
  EXPECT_NEAR(n.spectral, n.frobenius, 1e-12);
  const auto m = matrix_norms(SymmetricMatrix::identity(4));
  EXPECT_GT(m.frobenius - m.spectral, 0.5);
}

TEST(ConditionNumber, Examples) {
  EXPECT_NEAR(condition_number(5.0 * SymmetricMatrix::identity(4)), 1.0, 1e-14);
  EXPECT_NEAR(condition_number(SymmetricMatrix::diagonal(Eigen::Vector2d(4, 0.001))), 4000.0, 1e-9);
  EXPECT_TRUE(std::isinf(condition_number(SymmetricMatrix::diagonal(Eigen::Vector2d(1, -1)))));
  EXPECT_DOUBLE_EQ(condition_number(SymmetricMatrix(Eigen::MatrixXd::Constant(1, 1, 2.0))), 1.0);
}

TEST(ConditionNumber, ScaleInvariant) {
  std::mt19937_64 rng(3);
  const SymmetricMatrix a(oracle::random_pd(rng, 6));
  EXPECT_NEAR(condition_number(7.5 * a) / condition_number(a), 1.0, 1e-10);
}

TEST(ConditionNumber, BandedTruthAtTwoHundred) {
  ScenarioSpec s;
  s.p = 200;
  const double c = condition_number(true_covariance(s));
  EXPECT_NEAR(c / 1e4, 1.7, 0.1);
}

TEST(PositiveDefinite, Examples) {
  EXPECT_TRUE(is_positive_definite(SymmetricMatrix::identity(3), 0.0));
  EXPECT_FALSE(is_positive_definite(SymmetricMatrix::diagonal(Eigen::Vector2d(1, -1e-6)), 0.0));
  EXPECT_FALSE(is_positive_definite(SymmetricMatrix::identity(2), 2.0));
  EXPECT_THROW(is_positive_definite(SymmetricMatrix::identity(2), -1.0), InvalidInput);
}

TEST(CountNonzeros, UsesTolerance) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1e-9, 1e-9, 0;
  EXPECT_EQ(count_nonzeros(a, 0.0), 3u);
  EXPECT_EQ(count_nonzeros(a, 1e-8), 1u);
}

}  // namespace
}  // namespace rws
