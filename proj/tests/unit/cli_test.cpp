#include "rws/io.hpp"
#include "rws/matrix.hpp"

#include "cli_runner.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace rws {
namespace {

using testing_support::run_cli;
using testing_support::ScratchDir;
using testing_support::slurp;
using testing_support::write_file;

const std::string kFixtures = RWS_FIXTURE_DIR;

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("estimate --input /nonexistent/x.csv --out /tmp/never.csv"), 2);
  EXPECT_EQ(run_cli("estimate --input a.csv --out b.csv --lambda notanumber"), 2);
}

TEST(Cli, ProjectWithUnitBoundFlattensSpectrum) {
  ScratchDir dir("rws_cli_project");
  write_file(dir / "in.csv", "3,1\n1,1\n");
  ASSERT_EQ(run_cli("project --input " + dir / "in.csv" + " --out " + dir / "out.csv" + " --kappa 1"), 0);
  const auto m = io::read_matrix_csv(dir / "out.csv");
  EXPECT_NEAR(m(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(m(1, 1), 2.0, 1e-12);
  EXPECT_NEAR(m(0, 1), 0.0, 1e-12);
  const auto report = nlohmann::json::parse(slurp(dir / "out.json"));
  EXPECT_EQ(report["command"], "project");
}

TEST(Cli, ProjectRejectsConflictingConstraints) {
  ScratchDir dir("rws_cli_conflict");
  write_file(dir / "in.csv", "1,0\n0,1\n");
  EXPECT_EQ(run_cli("project --input " + dir / "in.csv" + " --out " + dir / "o.csv" +
                    " --kappa 2 --tau 0.1"),
            2);
  write_file(dir / "bad.csv", "1,2,3\n4,5,6\n");
  EXPECT_EQ(run_cli("project --input " + dir / "bad.csv" + " --out " + dir / "o.csv" + " --kappa 2"), 2);
}

TEST(Cli, SimulateThenEstimateWithoutPenaltyReturnsSampleCovariance) {
  ScratchDir dir("rws_cli_sim");
  ASSERT_EQ(run_cli("simulate --structure banded --distribution normal --n 60 --p 8 --reps 1 --seed 3 --out-dir " +
                    dir.path().string()),
            0);
  const std::string data = dir / "rep_0000.csv";
  ASSERT_TRUE(std::filesystem::exists(data));
  ASSERT_EQ(run_cli("estimate --input " + data + " --out " + dir / "est.csv" +
                    " --lambda 0 --kappa 1e12 --no-warm-start"),
            0);
  const auto est = io::read_matrix_csv(dir / "est.csv");
  const auto x = io::read_numeric_csv(data).values;
  const Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd s = c.transpose() * c / static_cast<double>(x.rows());
  EXPECT_LT((est.matrix() - s).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Cli, EstimateReportIsFeasible) {
  ScratchDir dir("rws_cli_est");
  ASSERT_EQ(run_cli("simulate --n 30 --p 20 --seed 1 --out-dir " + dir.path().string()), 0);
  ASSERT_EQ(run_cli("estimate --input " + dir / "rep_0000.csv" + " --out " + dir / "e.csv" +
                    " --kappa 50 --lambda 0.1"),
            0);
  const auto report = nlohmann::json::parse(slurp(dir / "e.json"));
  EXPECT_LE(report["result"]["cond"].get<double>(), 50.0 * (1 + 1e-6));
  EXPECT_EQ(report["schema_version"], 1);
}

TEST(Cli, StrictModeFailsOnIterationCap) {
  ScratchDir dir("rws_cli_strict");
  ASSERT_EQ(run_cli("simulate --n 30 --p 20 --seed 2 --out-dir " + dir.path().string()), 0);
  const std::string base = "estimate --input " + dir / "rep_0000.csv" + " --out " + dir / "e.csv" +
                           " --kappa 5 --max-iters 1 --no-warm-start";
  EXPECT_EQ(run_cli(base), 0);
  EXPECT_EQ(run_cli(base + " --strict"), 3);
}

TEST(Cli, PortfolioOnFixture) {
  ScratchDir dir("rws_cli_port");
  ASSERT_EQ(run_cli("portfolio --input " + kFixtures + "/returns.csv --out " + dir / "r.csv" +
                    " --window 48 --kappa 100"),
            0);
  const std::string out = slurp(dir / "r.csv");
  EXPECT_EQ(out.rfind("date,return\n", 0), 0u);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 13);
}

TEST(Cli, BenchWritesTables) {
  ScratchDir dir("rws_cli_bench");
  write_file(dir / "s.json",
             R"({"structure": "banded", "distribution": "normal", "n": 30, "p": 12, "reps": 2,
                 "seed": 5, "estimators": ["SAM", "RATE", "RWS"], "kappa": 100})");
  ASSERT_EQ(run_cli("bench --scenario " + dir / "s.json" + " --out " + dir / "b.csv"), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "b.md"));
  EXPECT_NE(slurp(dir / "b.csv").find("RWS"), std::string::npos);
  write_file(dir / "bad.json", R"({"structure": "banded", "colour": "red"})");
  EXPECT_EQ(run_cli("bench --scenario " + dir / "bad.json" + " --out " + dir / "b2.csv"), 2);
}

TEST(Cli, SameSeedSameBytes) {
  ScratchDir dir("rws_cli_seed");
  std::filesystem::create_directories(dir / "a");
  std::filesystem::create_directories(dir / "b");
  const std::string args = "simulate --distribution t35 --n 25 --p 6 --seed 8 --out-dir sim";
  ASSERT_EQ(testing_support::run_cli_in(dir / "a", args), 0);
  ASSERT_EQ(testing_support::run_cli_in(dir / "b", args), 0);
  EXPECT_EQ(slurp(dir / "a/sim/rep_0000.csv"), slurp(dir / "b/sim/rep_0000.csv"));
  EXPECT_EQ(slurp(dir / "a/sim/report.json"), slurp(dir / "b/sim/report.json"));
}

}  // namespace
}  // namespace rws
