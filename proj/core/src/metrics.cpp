#include "rws/metrics.hpp"

#include "rws/errors.hpp"
#include "rws/io.hpp"
#include "rws/model_selection.hpp"
#include "rws/parallel.hpp"

#include <cmath>
#include <sstream>

namespace rws {

MetricsRow compute_metrics(const SymmetricMatrix& estimate, const SymmetricMatrix& truth,
                           double zero_tol, const std::optional<SymmetricMatrix>& support) {
  if (estimate.dim() != truth.dim()) throw InvalidInput("compute_metrics: dimension mismatch");
  if (support && support->dim() != truth.dim()) {
    throw InvalidInput("compute_metrics: support dimension mismatch");
  }
  if (!(zero_tol >= 0.0)) throw InvalidInput("zero_tol must be nonnegative");
  const Index p = truth.dim();
  MetricsRow row;
  const MatrixNorms diff = matrix_norms(estimate - truth);
  row.spec_err = diff.spectral;
  row.frob_err = diff.frobenius;

  const Eigen::MatrixXd& s = support ? support->matrix() : estimate.matrix();
  std::size_t wrong = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      const bool est_zero = std::abs(s(i, j)) <= zero_tol;
      const bool true_zero = truth(i, j) == 0.0;
      if (est_zero != true_zero) ++wrong;
    }
  }
  row.fsl_fraction = static_cast<double>(wrong) / static_cast<double>(p * p);
  row.fsl_percent = 100.0 * row.fsl_fraction;
  row.nonzeros = count_nonzeros(s, zero_tol);

  const EigenDecomposition eig = sym_eig(estimate);
  row.gamma_min = eig.values(p - 1);
  row.pd = row.gamma_min > 0.0;
  row.cond = condition_number(eig);
  return row;
}

MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return out;
}

namespace {

struct RepOutcome {
  std::vector<std::optional<RepRecord>> records;
  std::vector<std::string> failures;
};

PilotOptions default_pilot(const BenchmarkConfig& config) {
  if (config.pilot) return *config.pilot;
  PilotOptions o;
  o.method = config.scenario.distribution == Distribution::Normal ? PilotMethod::Sample
                                                                  : PilotMethod::Huber;
  return o;
}

bool check_feasible(const MetricsRow& m, const EstimatorSpec& e) {
  if (e.kind == EstimatorKind::Rpde) return m.gamma_min >= e.tau * (1.0 - 1e-6);
  if (uses_kappa(e.kind)) return m.pd && m.cond <= e.kappa * (1.0 + 1e-6);
  return true;
}

RepOutcome run_rep(const BenchmarkConfig& config, const SymmetricMatrix& truth,
                   const PilotOptions& pilot_options, int rep) {
  RepOutcome out;
  out.records.resize(config.estimators.size());
  const DataMatrix x = sample(config.scenario, truth, rep);
  const Index n = x.n();
  const std::string tag = "rep " + std::to_string(rep) + ": ";

  std::optional<PilotEstimate> pilot;
  try {
    pilot = build_pilot(x, pilot_options);
  } catch (const Error& e) {
    out.failures.push_back(tag + "pilot failed: " + e.what());
  }

  const bool cv = config.tuning == Tuning::CrossValidated;
  CvSpec cv_spec;
  cv_spec.n_splits = config.cv_splits;
  cv_spec.seed = splitmix64(config.scenario.seed ^ static_cast<std::uint64_t>(rep));
  cv_spec.threads = 1;

  double rate_lambda = config.defaults.rate_lambda;
  if (cv && pilot) {
    try {
      EstimatorSpec rate = config.defaults;
      rate.kind = EstimatorKind::Rate;
      cv_spec.lambda_grid = config.rate_lambda_grid;
      cv_spec.kappa_grid = {config.defaults.kappa};
      rate_lambda = cross_validate(x, pilot_options, rate, cv_spec).lambda_hat;
    } catch (const Error& e) {
      out.failures.push_back(tag + "RATE tuning failed: " + e.what());
    }
  }

  for (std::size_t k = 0; k < config.estimators.size(); ++k) {
    const EstimatorKind kind = config.estimators[k];
    EstimatorSpec e = config.defaults;
    e.kind = kind;
    e.rate_lambda = rate_lambda;
    try {
      if (kind == EstimatorKind::Sample) {
        const PilotEstimate sam = sample_covariance(x);
        RepRecord r;
        r.rep = rep;
        r.metrics = compute_metrics(sam.sigma, truth, config.zero_tol);
        r.metrics.estimator = to_string(kind);
        out.records[k] = r;
        continue;
      }
      if (!pilot) throw InvalidInput("no pilot");
      if (kind == EstimatorKind::Rate) {
        e.lambda = rate_lambda;
      } else if (cv) {
        cv_spec.lambda_grid = config.lambda_grid;
        cv_spec.kappa_grid = uses_kappa(kind) ? config.kappa_grid : std::vector<double>{e.kappa};
        const CvResult tuned = cross_validate(x, pilot_options, e, cv_spec);
        e.lambda = tuned.lambda_hat;
        if (uses_kappa(kind)) e.kappa = tuned.kappa_hat;
      }
      const FitResult fitted = fit(*pilot, n, e);
      RepRecord r;
      r.rep = rep;
      r.lambda = e.lambda;
      r.kappa = uses_kappa(kind) ? e.kappa : 0.0;
      r.tau = kind == EstimatorKind::Rpde ? e.tau : 0.0;
      if (fitted.solve) {
        r.iterations = fitted.solve->iterations;
        r.converged = fitted.solve->converged;
      }
      r.metrics = compute_metrics(fitted.estimate, truth, config.zero_tol, fitted.support);
      r.metrics.estimator = to_string(kind);
      r.feasible = check_feasible(r.metrics, e);
      out.records[k] = r;
    } catch (const Error& err) {
      out.failures.push_back(tag + to_string(kind) + " failed: " + err.what());
    }
  }
  return out;
}

std::string cell(double v) { return io::format_double(v); }

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
  validate(config.scenario);
  if (config.estimators.empty()) throw InvalidInput("no estimators requested");
  if (config.tuning == Tuning::CrossValidated) {
    if (config.lambda_grid.empty() || config.kappa_grid.empty() || config.rate_lambda_grid.empty()) {
      throw InvalidInput("cross-validated benchmark needs lambda, kappa and RATE grids");
    }
  }
  const SymmetricMatrix truth = true_covariance(config.scenario);
  const PilotOptions pilot_options = default_pilot(config);
  const int reps = config.scenario.reps;

  std::vector<RepOutcome> outcomes(static_cast<std::size_t>(reps));
  parallel_for(outcomes.size(), config.threads, [&](std::size_t r) {
    outcomes[r] = run_rep(config, truth, pilot_options, static_cast<int>(r));
  });

  BenchmarkReport report;
  report.pilot = to_string(pilot_options.method);
  for (std::size_t k = 0; k < config.estimators.size(); ++k) {
    EstimatorSummary s;
    s.estimator = to_string(config.estimators[k]);
    std::vector<double> spec, frob, fslf, fslp, cond, nnz;
    int pd = 0;
    int feasible = 0;
    for (const auto& o : outcomes) {
      if (!o.records[k]) {
        ++s.failures;
        continue;
      }
      const RepRecord& r = *o.records[k];
      ++s.reps_ok;
      spec.push_back(r.metrics.spec_err);
      frob.push_back(r.metrics.frob_err);
      fslf.push_back(r.metrics.fsl_fraction);
      fslp.push_back(r.metrics.fsl_percent);
      cond.push_back(r.metrics.cond);
      nnz.push_back(static_cast<double>(r.metrics.nonzeros));
      if (r.metrics.pd) ++pd;
      if (r.feasible) ++feasible;
    }
    s.spec_err = mean_sd(spec);
    s.frob_err = mean_sd(frob);
    s.fsl_fraction = mean_sd(fslf);
    s.fsl_percent = mean_sd(fslp);
    s.cond = mean_sd(cond);
    s.nonzeros = mean_sd(nnz);
    if (s.reps_ok > 0) {
      s.pd_percent = 100.0 * pd / s.reps_ok;
      s.feasible_percent = 100.0 * feasible / s.reps_ok;
    }
    report.summary.push_back(s);
  }
  for (const auto& o : outcomes) {
    for (const auto& r : o.records) {
      if (r) report.reps.push_back(*r);
    }
    report.failures.insert(report.failures.end(), o.failures.begin(), o.failures.end());
  }
  return report;
}

std::string summary_csv(const BenchmarkReport& report) {
  std::ostringstream s;
  s << "estimator,reps_ok,failures,spec_mean,spec_sd,frob_mean,frob_sd,fsl_fraction_mean,"
       "fsl_fraction_sd,fsl_percent_mean,fsl_percent_sd,pd_percent,feasible_percent,cond_mean,"
       "cond_sd,nonzeros_mean,nonzeros_sd\n";
  for (const auto& e : report.summary) {
    s << e.estimator << ',' << e.reps_ok << ',' << e.failures << ',' << cell(e.spec_err.mean) << ','
      << cell(e.spec_err.sd) << ',' << cell(e.frob_err.mean) << ',' << cell(e.frob_err.sd) << ','
      << cell(e.fsl_fraction.mean) << ',' << cell(e.fsl_fraction.sd) << ','
      << cell(e.fsl_percent.mean) << ',' << cell(e.fsl_percent.sd) << ',' << cell(e.pd_percent)
      << ',' << cell(e.feasible_percent) << ',' << cell(e.cond.mean) << ',' << cell(e.cond.sd)
      << ',' << cell(e.nonzeros.mean) << ',' << cell(e.nonzeros.sd) << '\n';
  }
  return s.str();
}

std::string reps_csv(const BenchmarkReport& report) {
  std::ostringstream s;
  s << "rep,estimator,spec,frob,fsl_fraction,fsl_percent,pd,cond,gamma_min,nonzeros,lambda,kappa,"
       "tau,iterations,converged,feasible\n";
  for (const auto& r : report.reps) {
    const auto& m = r.metrics;
    s << r.rep << ',' << m.estimator << ',' << cell(m.spec_err) << ',' << cell(m.frob_err) << ','
      << cell(m.fsl_fraction) << ',' << cell(m.fsl_percent) << ',' << (m.pd ? 1 : 0) << ','
      << cell(m.cond) << ',' << cell(m.gamma_min) << ',' << m.nonzeros << ',' << cell(r.lambda)
      << ',' << cell(r.kappa) << ',' << cell(r.tau) << ',' << r.iterations << ','
      << (r.converged ? 1 : 0) << ',' << (r.feasible ? 1 : 0) << '\n';
  }
  return s.str();
}

std::string summary_markdown(const BenchmarkReport& report) {
  std::ostringstream s;
  s << "| metric |";
  for (const auto& e : report.summary) s << ' ' << e.estimator << " |";
  s << "\n|---|";
  for (std::size_t i = 0; i < report.summary.size(); ++i) s << "---|";
  s << '\n';
  auto line = [&](const char* name, auto pick) {
    s << "| " << name << " |";
    for (const auto& e : report.summary) {
      const MeanSd v = pick(e);
      s << ' ' << fixed(v.mean, 2) << '(' << fixed(v.sd, 2) << ") |";
    }
    s << '\n';
  };
  line("Spec", [](const EstimatorSummary& e) { return e.spec_err; });
  line("Frob", [](const EstimatorSummary& e) { return e.frob_err; });
  line("FSL (fraction)", [](const EstimatorSummary& e) { return e.fsl_fraction; });
  line("FSL (%)", [](const EstimatorSummary& e) { return e.fsl_percent; });
  s << "| PD (%) |";
  for (const auto& e : report.summary) s << ' ' << fixed(e.pd_percent, 0) << " |";
  s << '\n';
  return s.str();
}

}  // namespace rws
