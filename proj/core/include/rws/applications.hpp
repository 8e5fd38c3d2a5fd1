#pragma once

#include "rws/estimators.hpp"
#include "rws/metrics.hpp"
#include "rws/model_selection.hpp"

#include <Eigen/Cholesky>

#include <optional>
#include <string>
#include <vector>

namespace rws {

/// Two-class linear discriminant with a plug-in covariance estimate.
class LdaModel {
 public:
  /// labels must be 0 or 1 with both classes present; sigma_hat must be
  /// positive definite (NotPositiveDefinite otherwise).
  LdaModel(const Eigen::MatrixXd& x, const std::vector<int>& labels, const SymmetricMatrix& sigma_hat);

  /// log(pi0 / pi1) + (x - (mu0 + mu1) / 2)^T Sigma^{-1} (mu0 - mu1).
  double discriminant(const Eigen::VectorXd& x) const;
  /// 1 when the discriminant is strictly negative, else 0.
  int predict(const Eigen::VectorXd& x) const;

  double pi0() const noexcept { return pi0_; }
  double pi1() const noexcept { return pi1_; }
  const Eigen::VectorXd& mu0() const noexcept { return mu0_; }
  const Eigen::VectorXd& mu1() const noexcept { return mu1_; }

 private:
  double pi0_ = 0.5;
  double pi1_ = 0.5;
  Eigen::VectorXd mu0_;
  Eigen::VectorXd mu1_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
  Eigen::VectorXd direction_;  // Sigma^{-1} (mu0 - mu1)
};

struct LdaPrediction {
  std::vector<int> labels;
  double error_rate = 0.0;
};

LdaPrediction lda_fit_predict(const Eigen::MatrixXd& train, const std::vector<int>& train_labels,
                              const Eigen::MatrixXd& test, const std::vector<int>& test_labels,
                              const SymmetricMatrix& sigma_hat);

/// Within-class covariance sum_c sum_{i in c} (x_i - mu_c)(x_i - mu_c)^T / n.
PilotEstimate pooled_covariance(const Eigen::MatrixXd& x, const std::vector<int>& labels);

/// Classification error of the RWS and eigenvalue-floor estimates across
/// condition bounds and floors, on two Gaussian classes sharing a banded
/// covariance (means 0 and `mean_shift` * 1).
struct LdaExperimentConfig {
  Index p = 200;
  Index train_per_class = 100;
  Index test_per_class = 100;
  double mean_shift = 3.0;
  int reps = 20;
  std::uint64_t seed = 0;
  double lambda = 0.1;
  std::vector<double> kappas{1e3, 1e4, 1e5, 1e6};
  std::vector<double> taus{1e-3, 1e-4, 1e-5, 1e-6};
  double mu = 1.0;
  double epsilon = 1e-6;
  int max_iters = 5000;
  int threads = 1;
};

struct LdaExperimentRow {
  std::string method;  // "RWS" or "RPDE"
  double parameter = 0.0;
  MeanSd error;
  MeanSd cond;
  std::vector<double> errors;  // per rep
};

std::vector<LdaExperimentRow> run_lda_experiment(const LdaExperimentConfig& config);

/// Sigma^{-1} 1 / (1^T Sigma^{-1} 1) via a Cholesky solve, renormalized so the
/// weights sum to one. Throws NotPositiveDefinite.
Eigen::VectorXd min_variance_weights(const SymmetricMatrix& sigma_hat);

struct BacktestSpec {
  Eigen::MatrixXd returns;  // T x p
  Index window = 120;
  EstimatorSpec estimator;
  PilotOptions pilot;
  /// Re-tune (lambda, kappa) at every step when set.
  std::optional<CvSpec> cv;
};

struct BacktestResult {
  std::vector<double> returns;  // realized out-of-sample portfolio returns
  std::vector<Index> periods;   // row index of each realized return
  double mean_percent = 0.0;
  double sd_percent = 0.0;
  /// mean / sd * 100; +infinity when sd is zero.
  double sharpe_percent = 0.0;
  int skipped = 0;
  std::vector<std::string> warnings;
};

/// Rolling window: for t = window .. T - 1 estimate on rows t - window .. t - 1
/// and realize w^T x_t.
BacktestResult backtest(const BacktestSpec& spec);

}  // namespace rws
