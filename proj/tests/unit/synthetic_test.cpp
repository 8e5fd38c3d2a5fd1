#include "rws/errors.hpp"
#include "rws/pilot.hpp"
#include "rws/synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace rws {
namespace {

ScenarioSpec spec(Structure st, Distribution d, Index n, Index p, std::uint64_t seed = 0) {
  ScenarioSpec s;
  s.structure = st;
  s.distribution = d;
  s.n = n;
  s.p = p;
  s.seed = seed;
  return s;
}

TEST(TrueCovariance, BandedEntries) {
  const auto s = true_covariance(spec(Structure::Banded, Distribution::Normal, 10, 30));
  EXPECT_DOUBLE_EQ(s(0, 0), 1.0);
  EXPECT_NEAR(s(0, 3), 0.7, 1e-15);
  EXPECT_NEAR(s(5, 14), 0.1, 1e-15);
  EXPECT_EQ(s(0, 10), 0.0);
  EXPECT_EQ(s(29, 0), 0.0);
}

TEST(TrueCovariance, BandedSpectrumMatchesPublishedValues) {
  const auto s100 = true_covariance(spec(Structure::Banded, Distribution::Normal, 10, 100));
  EXPECT_NEAR(min_eigenvalue(s100), 2.05e-3, 0.01e-3);
  EXPECT_NEAR(condition_number(s100) / 4.84e3, 1.0, 0.01);
  const auto s200 = true_covariance(spec(Structure::Banded, Distribution::Normal, 10, 200));
  EXPECT_NEAR(min_eigenvalue(s200), 5.63e-4, 0.01e-4);
  EXPECT_NEAR(condition_number(s200) / 1.77e4, 1.0, 0.01);
}

TEST(TrueCovariance, BlockDiagonalFloorAndSecondBlock) {
  const auto st = spec(Structure::BlockDiagonal, Distribution::Normal, 10, 100, 1);
  const auto s = true_covariance(st);
  EXPECT_NEAR(min_eigenvalue(s), 1e-3, 1e-9);
  EXPECT_EQ(s(60, 60), 4.0);
  EXPECT_EQ(s(60, 61), 0.0);
  EXPECT_EQ(s(10, 70), 0.0);
  EXPECT_TRUE(true_covariance(st) == s);
}

TEST(ScenarioSpec, Validation) {
  EXPECT_THROW(validate(spec(Structure::BlockDiagonal, Distribution::Normal, 10, 7)), InvalidInput);
  EXPECT_THROW(validate(spec(Structure::Banded, Distribution::Normal, 10, 0)), InvalidInput);
  EXPECT_THROW(parse_distribution("cauchy"), InvalidInput);
  EXPECT_EQ(parse_structure("block"), Structure::BlockDiagonal);
  EXPECT_EQ(parse_distribution("ct5"), Distribution::ContamT5);
}

TEST(Sample, DeterministicPerSeedAndRep) {
  const auto st = spec(Structure::Banded, Distribution::T35, 20, 6, 3);
  const auto truth = true_covariance(st);
  EXPECT_EQ(sample(st, truth, 0).values(), sample(st, truth, 0).values());
  EXPECT_NE(sample(st, truth, 0).values(), sample(st, truth, 1).values());
}

TEST(Sample, NormalCovarianceConverges) {
  const auto st = spec(Structure::Banded, Distribution::Normal, 100000, 5, 2);
  const auto truth = true_covariance(st);
  const auto s = sample_covariance(sample(st, truth));
  EXPECT_LT((s.sigma.matrix() - truth.matrix()).cwiseAbs().maxCoeff(), 0.05);
}

TEST(Sample, SkewDrawsAreFinite) {
  auto st = spec(Structure::Banded, Distribution::SkewT4, 200000, 3, 4);
  st.covariance_matched = true;
  const auto truth = true_covariance(st);
  const auto x = sample(st, truth);
  EXPECT_TRUE(x.values().allFinite());
}

TEST(Sample, ContaminationFraction) {
  const auto st = spec(Structure::Banded, Distribution::ContamT5, 20000, 3, 5);
  const auto d = sample_draw(st, true_covariance(st));
  double frac = 0;
  for (bool c : d.contaminated) frac += c ? 1.0 : 0.0;
  frac /= 20000.0;
  EXPECT_NEAR(frac, 0.1, 0.01);
}

TEST(Sample, RejectsIndefiniteTruth) {
  const auto st = spec(Structure::Banded, Distribution::Normal, 10, 2);
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(sample(st, SymmetricMatrix(bad)), InvalidInput);
}

}  // namespace
}  // namespace rws
