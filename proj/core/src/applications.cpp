#include "rws/applications.hpp"

#include "rws/errors.hpp"
#include "rws/parallel.hpp"
#include "rws/rng.hpp"
#include "rws/synthetic.hpp"

#include <cmath>
#include <limits>

namespace rws {

namespace {

void check_labels(const Eigen::MatrixXd& x, const std::vector<int>& labels) {
  if (static_cast<Index>(labels.size()) != x.rows()) throw InvalidInput("label count mismatch");
  for (int l : labels) {
    if (l != 0 && l != 1) throw InvalidInput("labels must be 0 or 1");
  }
}

Eigen::LLT<Eigen::MatrixXd> pd_factor(const SymmetricMatrix& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma.matrix());
  if (llt.info() != Eigen::Success || !is_positive_definite(sigma)) {
    throw NotPositiveDefinite("covariance estimate is not positive definite");
  }
  return llt;
}

}  // namespace

LdaModel::LdaModel(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                   const SymmetricMatrix& sigma_hat) {
  check_labels(x, labels);
  if (sigma_hat.dim() != x.cols()) throw InvalidInput("covariance dimension mismatch");
  const Index p = x.cols();
  mu0_ = Eigen::VectorXd::Zero(p);
  mu1_ = Eigen::VectorXd::Zero(p);
  Index n0 = 0;
  Index n1 = 0;
  for (Index i = 0; i < x.rows(); ++i) {
    if (labels[static_cast<std::size_t>(i)] == 0) {
      mu0_ += x.row(i).transpose();
      ++n0;
    } else {
      mu1_ += x.row(i).transpose();
      ++n1;
    }
  }
  if (n0 == 0 || n1 == 0) throw InvalidInput("both classes must be present in the training data");
  mu0_ /= static_cast<double>(n0);
  mu1_ /= static_cast<double>(n1);
  const double n = static_cast<double>(n0 + n1);
  pi0_ = static_cast<double>(n0) / n;
  pi1_ = static_cast<double>(n1) / n;
  factor_ = pd_factor(sigma_hat);
  direction_ = factor_.solve(mu0_ - mu1_);
}

double LdaModel::discriminant(const Eigen::VectorXd& x) const {
  if (x.size() != mu0_.size()) throw InvalidInput("observation dimension mismatch");
  return std::log(pi0_ / pi1_) + (x - 0.5 * (mu0_ + mu1_)).dot(direction_);
}

int LdaModel::predict(const Eigen::VectorXd& x) const { return discriminant(x) < 0.0 ? 1 : 0; }

LdaPrediction lda_fit_predict(const Eigen::MatrixXd& train, const std::vector<int>& train_labels,
                              const Eigen::MatrixXd& test, const std::vector<int>& test_labels,
                              const SymmetricMatrix& sigma_hat) {
  check_labels(test, test_labels);
  if (test.cols() != train.cols()) throw InvalidInput("train/test dimension mismatch");
  const LdaModel model(train, train_labels, sigma_hat);
  LdaPrediction out;
  Index wrong = 0;
  for (Index i = 0; i < test.rows(); ++i) {
    const int label = model.predict(test.row(i).transpose());
    out.labels.push_back(label);
    if (label != test_labels[static_cast<std::size_t>(i)]) ++wrong;
  }
  out.error_rate = test.rows() > 0 ? static_cast<double>(wrong) / static_cast<double>(test.rows()) : 0.0;
  return out;
}

PilotEstimate pooled_covariance(const Eigen::MatrixXd& x, const std::vector<int>& labels) {
  check_labels(x, labels);
  const Index p = x.cols();
  Eigen::VectorXd mean[2] = {Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(p)};
  Index count[2] = {0, 0};
  for (Index i = 0; i < x.rows(); ++i) {
    const int c = labels[static_cast<std::size_t>(i)];
    mean[c] += x.row(i).transpose();
    ++count[c];
  }
  if (count[0] == 0 || count[1] == 0) throw InvalidInput("both classes must be present");
  for (int c = 0; c < 2; ++c) mean[c] /= static_cast<double>(count[c]);
  Eigen::MatrixXd centered = x;
  for (Index i = 0; i < x.rows(); ++i) centered.row(i) -= mean[labels[static_cast<std::size_t>(i)]].transpose();
  Eigen::MatrixXd s = centered.transpose() * centered / static_cast<double>(x.rows());
  PilotEstimate out{SymmetricMatrix(s), s.diagonal(), PilotMethod::Sample, {}};
  return out;
}

std::vector<LdaExperimentRow> run_lda_experiment(const LdaExperimentConfig& config) {
  if (config.reps < 1 || config.p < 1 || config.train_per_class < 1 || config.test_per_class < 1) {
    throw InvalidInput("LDA experiment sizes must be positive");
  }
  ScenarioSpec banded;
  banded.p = config.p;
  const SymmetricMatrix truth = true_covariance(banded);
  const Index p = config.p;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p);
  const Eigen::VectorXd shift = Eigen::VectorXd::Constant(p, config.mean_shift);

  const std::size_t nk = config.kappas.size();
  const std::size_t nt = config.taus.size();
  std::vector<std::vector<double>> errors(nk + nt, std::vector<double>(static_cast<std::size_t>(config.reps)));
  std::vector<std::vector<double>> conds = errors;

  parallel_for(static_cast<std::size_t>(config.reps), config.threads, [&](std::size_t r) {
    auto rng = make_rng(config.seed, Stream::Data, r);
    auto draw = [&](Index per_class, Eigen::MatrixXd& x, std::vector<int>& y) {
      x.resize(2 * per_class, p);
      x.topRows(per_class) = normal_rows(rng, per_class, zero, truth);
      x.bottomRows(per_class) = normal_rows(rng, per_class, shift, truth);
      y.assign(static_cast<std::size_t>(per_class), 0);
      y.resize(static_cast<std::size_t>(2 * per_class), 1);
    };
    Eigen::MatrixXd train, test;
    std::vector<int> ytrain, ytest;
    draw(config.train_per_class, train, ytrain);
    draw(config.test_per_class, test, ytest);
    const PilotEstimate pilot = pooled_covariance(train, ytrain);

    EstimatorSpec e;
    e.lambda = config.lambda;
    e.mu = config.mu;
    e.epsilon = config.epsilon;
    e.max_iters = config.max_iters;
    e.warm_start_rate = false;
    for (std::size_t k = 0; k < nk + nt; ++k) {
      if (k < nk) {
        e.kind = EstimatorKind::Rws;
        e.kappa = config.kappas[k];
      } else {
        e.kind = EstimatorKind::Rpde;
        e.tau = config.taus[k - nk];
      }
      const FitResult fitted = fit(pilot, train.rows(), e);
      errors[k][r] = lda_fit_predict(train, ytrain, test, ytest, fitted.estimate).error_rate;
      conds[k][r] = condition_number(fitted.estimate);
    }
  });

  std::vector<LdaExperimentRow> rows;
  for (std::size_t k = 0; k < nk + nt; ++k) {
    LdaExperimentRow row;
    row.method = k < nk ? "RWS" : "RPDE";
    row.parameter = k < nk ? config.kappas[k] : config.taus[k - nk];
    row.error = mean_sd(errors[k]);
    row.cond = mean_sd(conds[k]);
    row.errors = errors[k];
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd min_variance_weights(const SymmetricMatrix& sigma_hat) {
  const auto llt = pd_factor(sigma_hat);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(sigma_hat.dim());
  Eigen::VectorXd w = llt.solve(ones);
  return w / w.sum();
}

BacktestResult backtest(const BacktestSpec& spec) {
  const Index t_total = spec.returns.rows();
  if (spec.window < 2) throw InvalidInput("window must be at least 2");
  if (t_total < spec.window + 1) throw InvalidInput("need at least window + 1 periods");
  if (!spec.returns.allFinite()) throw InvalidInput("returns contain non-finite values");

  BacktestResult out;
  for (Index t = spec.window; t < t_total; ++t) {
    try {
      const DataMatrix window(spec.returns.middleRows(t - spec.window, spec.window));
      EstimatorSpec e = spec.estimator;
      SymmetricMatrix sigma_hat = SymmetricMatrix::identity(window.p());
      if (e.kind == EstimatorKind::Sample) {
        sigma_hat = sample_covariance(window).sigma;
      } else {
        if (spec.cv) {
          CvSpec cv = *spec.cv;
          cv.seed = splitmix64(cv.seed ^ static_cast<std::uint64_t>(t));
          const CvResult tuned = cross_validate(window, spec.pilot, e, cv);
          e.lambda = tuned.lambda_hat;
          if (uses_kappa(e.kind)) e.kappa = tuned.kappa_hat;
        }
        sigma_hat = fit(build_pilot(window, spec.pilot), window.n(), e).estimate;
      }
      const Eigen::VectorXd w = min_variance_weights(sigma_hat);
      out.returns.push_back(w.dot(spec.returns.row(t).transpose()));
      out.periods.push_back(t);
    } catch (const Error& err) {
      ++out.skipped;
      out.warnings.push_back("period " + std::to_string(t) + " skipped: " + err.what());
    }
  }
  if (out.returns.empty()) {
    out.warnings.push_back("no out-of-sample returns were realized");
    return out;
  }
  const MeanSd m = mean_sd(out.returns);
  out.mean_percent = 100.0 * m.mean;
  out.sd_percent = 100.0 * m.sd;
  if (m.sd > 0.0) {
    out.sharpe_percent = 100.0 * m.mean / m.sd;
  } else {
    out.sharpe_percent = std::numeric_limits<double>::infinity();
    out.warnings.push_back("zero standard deviation; Sharpe ratio reported as infinity");
  }
  return out;
}

}  // namespace rws
