#include "rws/errors.hpp"
#include "rws/model_selection.hpp"
#include "rws/synthetic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace rws {
namespace {

DataMatrix data(Structure st, Index n, Index p, std::uint64_t seed) {
  ScenarioSpec s;
  s.structure = st;
  s.n = n;
  s.p = p;
  s.seed = seed;
  return sample(s, true_covariance(s));
}

TEST(MakeSplit, SizesAndDisjointness) {
  const auto s = make_split(10, 0.75, 3, 0);
  EXPECT_EQ(s.train.size(), 8u);
  EXPECT_EQ(s.test.size(), 2u);
  EXPECT_TRUE(std::is_sorted(s.train.begin(), s.train.end()));
  std::vector<Index> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (Index i = 0; i < 10; ++i) EXPECT_EQ(all[static_cast<std::size_t>(i)], i);
}

TEST(MakeSplit, SeededAndVariesByIndex) {
  const auto a = make_split(50, 0.5, 9, 1);
  const auto b = make_split(50, 0.5, 9, 1);
  const auto c = make_split(50, 0.5, 9, 2);
  EXPECT_EQ(a.train, b.train);
  EXPECT_NE(a.train, c.train);
}

TEST(Grids, LinearAndLog) {
  const auto g = linear_lambda_grid();
  ASSERT_EQ(g.size(), 20u);
  EXPECT_DOUBLE_EQ(g.front(), 0.01);
  EXPECT_NEAR(g.back(), 0.96, 1e-12);
  const auto l = log_grid(3, 0.1, 10.0);
  EXPECT_NEAR(l[1], 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(l.back(), 10.0);
}

TEST(CvSpec, RejectsBadGrids) {
  CvSpec s;
  s.lambda_grid = {0.2, 0.1};
  s.kappa_grid = {10.0};
  EXPECT_THROW(validate(s), InvalidInput);
  s.lambda_grid = {0.1};
  s.kappa_grid = {0.5};
  EXPECT_THROW(validate(s), InvalidInput);
  s.kappa_grid = {10.0};
  s.train_fraction = 1.0;
  EXPECT_THROW(validate(s), InvalidInput);
}

TEST(CrossValidate, SinglePointGrid) {
  const auto x = data(Structure::Banded, 40, 8, 1);
  CvSpec s;
  s.lambda_grid = {0.2};
  s.kappa_grid = {100.0};
  const auto r = cross_validate(x, {}, EstimatorSpec{}, s);
  EXPECT_DOUBLE_EQ(r.lambda_hat, 0.2);
  EXPECT_DOUBLE_EQ(r.kappa_hat, 100.0);
  EXPECT_EQ(r.table.size(), 1u);
  EXPECT_EQ(r.splits_used, 5);
}

TEST(CrossValidate, DiagonalTruthPrefersHeavyThresholding) {
  ScenarioSpec sc;
  sc.n = 200;
  sc.p = 10;
  sc.seed = 5;
  const auto x = sample(sc, SymmetricMatrix::identity(10));
  EstimatorSpec e;
  e.kind = EstimatorKind::Rate;
  CvSpec s;
  s.lambda_grid = {0.01, 0.5, 3.0};
  s.kappa_grid = {10.0};
  const auto r = cross_validate(x, {}, e, s);
  EXPECT_GE(r.lambda_hat, 0.5);
}

TEST(CrossValidate, TooFewRows) {
  const auto x = data(Structure::Banded, 7, 3, 1);
  CvSpec s;
  s.lambda_grid = {0.1};
  s.kappa_grid = {10.0};
  EXPECT_THROW(cross_validate(x, {}, EstimatorSpec{}, s), InsufficientData);
}

TEST(CrossValidate, IndependentOfThreadCount) {
  const auto x = data(Structure::Banded, 40, 12, 2);
  CvSpec s;
  s.lambda_grid = {0.05, 0.2, 0.6};
  s.kappa_grid = {10.0, 100.0};
  s.seed = 4;
  s.threads = 1;
  const auto a = cross_validate(x, {}, EstimatorSpec{}, s);
  s.threads = 3;
  const auto b = cross_validate(x, {}, EstimatorSpec{}, s);
  ASSERT_EQ(a.table.size(), b.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i) EXPECT_EQ(a.table[i].score, b.table[i].score);
  EXPECT_EQ(a.lambda_hat, b.lambda_hat);
  EXPECT_EQ(a.kappa_hat, b.kappa_hat);
}

TEST(CrossValidate, TableIsLambdaMajor) {
  const auto x = data(Structure::Banded, 30, 6, 3);
  CvSpec s;
  s.lambda_grid = {0.1, 0.3};
  s.kappa_grid = {10.0, 20.0, 40.0};
  const auto r = cross_validate(x, {}, EstimatorSpec{}, s);
  ASSERT_EQ(r.table.size(), 6u);
  EXPECT_EQ(r.table[1].lambda, 0.1);
  EXPECT_EQ(r.table[1].kappa, 20.0);
  EXPECT_EQ(r.table[3].lambda, 0.3);
}

}  // namespace
}  // namespace rws
