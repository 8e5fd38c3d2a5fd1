#include "rws/errors.hpp"
#include "rws/projection.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace rws {
namespace {

SymmetricMatrix diag(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Index>(d.size()));
  Index k = 0;
  for (double x : d) v(k++) = x;
  return SymmetricMatrix::diagonal(v);
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

TEST(ProjectCond, FeasibleInputIsReturnedBitForBit) {
  const auto id = SymmetricMatrix::identity(3);
  const auto r = project_cond(id, 2.0);
  EXPECT_TRUE(r.unchanged);
  EXPECT_TRUE(r.projected == id);
}

TEST(ProjectCond, NegativeDefiniteGoesToZero) {
  const auto r = project_cond(diag({-1.0, -2.0}), 10.0);
  EXPECT_EQ(r.projected.matrix(), Eigen::MatrixXd::Zero(2, 2));
  EXPECT_EQ(r.nu_star, 0.0);
}

TEST(ProjectCond, HandCaseThreeEigenvalues) {
  const auto r = project_cond(diag({10.0, 5.0, 1.0}), 5.0);
  // 10 drops to 5 nu and 1 rises to nu: 10 (5 nu - 10) + 2 (nu - 1) = 0.
  EXPECT_NEAR(r.nu_star, 51.0 / 26.0, 1e-12);
  EXPECT_NEAR(r.projected(0, 0), 255.0 / 26.0, 1e-12);
  EXPECT_NEAR(r.projected(1, 1), 5.0, 1e-12);
  EXPECT_NEAR(r.projected(2, 2), 51.0 / 26.0, 1e-12);
  EXPECT_EQ(r.clipped_high, 1);
  EXPECT_EQ(r.clipped_low, 1);
  EXPECT_NEAR(condition_number(r.projected), 5.0, 1e-10);
}

TEST(ProjectCond, RejectsKappaBelowOne) {
  EXPECT_THROW(project_cond(SymmetricMatrix::identity(2), 0.5), InvalidInput);
}

TEST(ProjectCond, KappaOneGivesMultipleOfIdentity) {
  std::mt19937_64 rng(5);
  const SymmetricMatrix y(oracle::random_pd(rng, 5));
  const auto r = project_cond(y, 1.0);
  const double t = y.matrix().trace() / 5.0;
  EXPECT_LT(max_abs_diff(r.projected.matrix(), t * Eigen::MatrixXd::Identity(5, 5)), 1e-10);
}

TEST(ProjectCond, MatchesBruteForceOracle) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::MatrixXd y = oracle::random_symmetric(rng, 8);
    for (double kappa : {1.0, 3.0, 50.0}) {
      const auto r = project_cond(SymmetricMatrix(y), kappa);
      EXPECT_LT(max_abs_diff(r.projected.matrix(), oracle::project_cond(y, kappa)), 1e-9)
          << "trial " << trial << " kappa " << kappa;
    }
  }
}

TEST(ProjectCond, IdempotentAndNonexpansive) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const SymmetricMatrix a(oracle::random_symmetric(rng, 6));
    const SymmetricMatrix b(oracle::random_symmetric(rng, 6));
    const auto pa = project_cond(a, 4.0).projected;
    const auto pb = project_cond(b, 4.0).projected;
    EXPECT_LT(max_abs_diff(project_cond(pa, 4.0).projected.matrix(), pa.matrix()), 1e-9);
    EXPECT_LE((pa.matrix() - pb.matrix()).norm(), (a.matrix() - b.matrix()).norm() + 1e-10);
  }
}

TEST(ProjectCond, TruncatedFormAgreesOnPositiveInput) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto eig = sym_eig(SymmetricMatrix(oracle::random_pd(rng, 7, 0.01)));
    const auto exact = project_cond_spectrum(eig.values, 5.0);
    const auto trunc = project_cond_spectrum_truncated(eig.values, 5.0);
    EXPECT_LT((exact.values - trunc.values).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ProjectCond, TruncatedFormIsWorseOnIndefiniteInput) {
  Eigen::VectorXd g(2);
  g << 1.0, -10.0;
  const auto exact = project_cond_spectrum(g, 1.0);
  const auto trunc = project_cond_spectrum_truncated(g, 1.0);
  EXPECT_EQ(exact.values, Eigen::VectorXd::Zero(2));
  EXPECT_NEAR(trunc.values(0), 0.5, 1e-12);
  EXPECT_LT((exact.values - g).squaredNorm(), (trunc.values - g).squaredNorm());
}

TEST(ProjectCondSpectrum, RejectsUnsortedInput) {
  Eigen::VectorXd g(3);
  g << 1.0, 3.0, 2.0;
  EXPECT_THROW(project_cond_spectrum(g, 2.0), InvalidInput);
}

TEST(ProjectFloor, HandCase) {
  const auto out = project_floor(diag({2.0, -1.0}), 0.5);
  EXPECT_NEAR(out(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(out(1, 1), 0.5, 1e-14);
  EXPECT_THROW(project_floor(diag({1.0}), 0.0), InvalidInput);
}

TEST(ProjectFloor, MatchesOracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd y = oracle::random_symmetric(rng, 7);
    EXPECT_LT(max_abs_diff(project_floor(SymmetricMatrix(y), 0.2).matrix(),
                           oracle::project_floor(y, 0.2)),
              1e-10);
  }
}

TEST(ProjectInterval, HandCaseAndDegenerateInterval) {
  const auto out = project_interval(diag({5.0, 1.0, 0.1}), 0.5, 3.0);
  EXPECT_NEAR(out(0, 0), 3.0, 1e-14);
  EXPECT_NEAR(out(1, 1), 1.0, 1e-14);
  EXPECT_NEAR(out(2, 2), 0.5, 1e-14);
  const auto flat = project_interval(diag({5.0, 1.0, 0.1}), 2.0, 2.0);
  EXPECT_LT(max_abs_diff(flat.matrix(), 2.0 * Eigen::MatrixXd::Identity(3, 3)), 1e-13);
  EXPECT_THROW(project_interval(diag({1.0}), 2.0, 1.0), InvalidInput);
}

}  // namespace
}  // namespace rws
