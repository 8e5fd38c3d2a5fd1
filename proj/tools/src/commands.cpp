#include "commands.hpp"

#include "rws/applications.hpp"
#include "rws/errors.hpp"
#include "rws/io.hpp"
#include "rws/metrics.hpp"
#include "rws/model_selection.hpp"
#include "rws/projection.hpp"
#include "rws/synthetic.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rws::cli {

namespace {

class Stopwatch {
 public:
  ~Stopwatch() {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    std::fprintf(stderr, "elapsed: %.1f ms\n", ms);
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json spectrum_summary(const SymmetricMatrix& m) {
  const EigenDecomposition eig = sym_eig(m);
  json j;
  j["cond"] = num(condition_number(eig));
  j["gamma_min"] = num(eig.values(eig.values.size() - 1));
  j["gamma_max"] = num(eig.values(0));
  return j;
}

void check_converged(const CommonFlags& common, bool converged) {
  if (common.strict && !converged) throw NumericalFailure("solver did not converge");
}

// ---------------------------------------------------------------- estimate

class EstimateCommand : public Command {
 public:
  explicit EstimateCommand(CLI::App& root) {
    app = root.add_subcommand("estimate", "Estimate a covariance matrix from data");
    app->add_option("--input", input_, "Data CSV, one observation per row")->required();
    app->add_option("--out", out_, "Estimated matrix CSV")->required();
    app->add_flag("--mu-search", mu_search_, "Pick mu from the built-in grid by iteration count");
    add_pilot_flags(app, pilot_);
    add_estimator_flags(app, estimator_);
    add_common_flags(app, common_);
  }

  void run() override {
    Stopwatch clock;
    const DataMatrix x = io::read_data_csv(input_);
    const PilotOptions pilot_options = pilot_.options(common_.seed);
    const PilotEstimate pilot = build_pilot(x, pilot_options);
    EstimatorSpec spec = estimator_.spec();

    FitResult fitted{pilot.sigma, pilot.sigma, std::nullopt};
    std::optional<double> chosen_mu;
    if (mu_search_ && uses_solver(spec.kind)) {
      const SolverConfig config = solver_config(pilot, x.n(), spec);
      const SymmetricMatrix target =
          spec.kind == EstimatorKind::Correlation ? to_correlation(pilot.sigma) : pilot.sigma;
      MuSearchResult searched = mu_search(target, config, common_.thread_count());
      chosen_mu = searched.best_mu;
      fitted = {searched.result.estimate, searched.result.sparse_estimate, std::move(searched.result)};
    } else {
      fitted = fit(pilot, x.n(), spec);
    }
    io::write_matrix_csv(out_, fitted.estimate.matrix());

    json report = report_header("estimate");
    report["config"] = {{"input", input_},
                        {"n", x.n()},
                        {"p", x.p()},
                        {"seed", common_.seed},
                        {"pilot", to_json(pilot_options)},
                        {"estimator", to_json(spec)},
                        {"mu_search", mu_search_}};
    json result = spectrum_summary(fitted.estimate);
    result["nonzeros"] = count_nonzeros(fitted.estimate.matrix(), 0.0);
    result["support_nonzeros"] = count_nonzeros(fitted.support.matrix(), 0.0);
    bool converged = true;
    if (fitted.solve) {
      result["iterations"] = fitted.solve->iterations;
      result["converged"] = fitted.solve->converged;
      result["accepted_start"] = fitted.solve->accepted_start;
      result["objective"] = num(fitted.solve->objective);
      converged = fitted.solve->converged;
    }
    if (chosen_mu) result["mu"] = *chosen_mu;
    report["result"] = result;
    report["outputs"] = {{"matrix", out_}};
    write_json(common_.report_path(sibling(out_, ".json")), report);
    check_converged(common_, converged);
  }

 private:
  std::string input_, out_;
  bool mu_search_ = false;
  PilotFlags pilot_;
  EstimatorFlags estimator_;
  CommonFlags common_;
};

// ----------------------------------------------------------------- project

class ProjectCommand : public Command {
 public:
  explicit ProjectCommand(CLI::App& root) {
    app = root.add_subcommand("project", "Project a symmetric matrix onto a spectral constraint set");
    app->add_option("--input", input_, "Symmetric matrix CSV")->required();
    app->add_option("--out", out_, "Projected matrix CSV")->required();
    auto* kappa = app->add_option("--kappa", kappa_, "Condition number bound");
    auto* tau = app->add_option("--tau", tau_, "Eigenvalue floor");
    auto* tau1 = app->add_option("--tau1", tau1_, "Lower end of the eigenvalue interval");
    auto* tau2 = app->add_option("--tau2", tau2_, "Upper end of the eigenvalue interval");
    tau1->needs(tau2);
    tau2->needs(tau1);
    kappa->excludes(tau)->excludes(tau1);
    tau->excludes(tau1);
    add_common_flags(app, common_);
  }

  void run() override {
    Stopwatch clock;
    const SymmetricMatrix y = io::read_matrix_csv(input_);
    json report = report_header("project");
    json result;
    SymmetricMatrix projected = y;
    const EigenDecomposition eig = sym_eig(y);
    const Index p = eig.values.size();
    if (kappa_) {
      const CondProjectionResult r = project_cond(y, *kappa_);
      projected = r.projected;
      report["config"] = {{"input", input_}, {"constraint", "condition"}, {"kappa", *kappa_}};
      result["nu_star"] = r.nu_star;
      result["alpha_star"] = r.alpha_star;
      result["beta_star"] = r.beta_star;
      result["clipped_low"] = r.clipped_low;
      result["clipped_high"] = r.clipped_high;
      result["unchanged"] = r.unchanged;
    } else if (tau_) {
      projected = project_floor(y, *tau_);
      report["config"] = {{"input", input_}, {"constraint", "floor"}, {"tau", *tau_}};
      int low = 0;
      for (Index i = 0; i < p; ++i) low += eig.values(i) < *tau_ ? 1 : 0;
      result["clipped_low"] = low;
      result["clipped_high"] = 0;
      result["unchanged"] = low == 0;
    } else if (tau1_ && tau2_) {
      projected = project_interval(y, *tau1_, *tau2_);
      report["config"] = {{"input", input_}, {"constraint", "interval"}, {"tau1", *tau1_}, {"tau2", *tau2_}};
      int low = 0;
      int high = 0;
      for (Index i = 0; i < p; ++i) {
        low += eig.values(i) < *tau1_ ? 1 : 0;
        high += eig.values(i) > *tau2_ ? 1 : 0;
      }
      result["clipped_low"] = low;
      result["clipped_high"] = high;
      result["unchanged"] = low + high == 0;
    } else {
      throw InvalidInput("one of --kappa, --tau or --tau1/--tau2 is required");
    }
    io::write_matrix_csv(out_, projected.matrix());
    json spectrum = spectrum_summary(projected);
    result.update(spectrum);
    report["result"] = result;
    report["outputs"] = {{"matrix", out_}};
    write_json(common_.report_path(sibling(out_, ".json")), report);
  }

 private:
  std::string input_, out_;
  std::optional<double> kappa_, tau_, tau1_, tau2_;
  CommonFlags common_;
};

// -------------------------------------------------------------------- tune

class TuneCommand : public Command {
 public:
  explicit TuneCommand(CLI::App& root) {
    app = root.add_subcommand("tune", "Choose (lambda, kappa) by repeated random-split validation");
    app->add_option("--input", input_, "Data CSV")->required();
    app->add_option("--out", out_, "Score table CSV")->required();
    app->add_option("--lambda-grid", lambda_grid_, "linear | log | log:COUNT:LO:HI | comma list")
        ->capture_default_str();
    app->add_option("--kappa-grid", kappa_grid_, "Comma list of condition bounds")
        ->capture_default_str();
    app->add_option("--splits", splits_, "Number of random splits")->capture_default_str();
    app->add_option("--train-fraction", train_fraction_, "Training share of each split")
        ->capture_default_str();
    add_pilot_flags(app, pilot_);
    add_estimator_flags(app, estimator_);
    add_common_flags(app, common_);
  }

  void run() override {
    Stopwatch clock;
    const DataMatrix x = io::read_data_csv(input_);
    const PilotOptions pilot_options = pilot_.options(common_.seed);
    const EstimatorSpec base = estimator_.spec();
    CvSpec cv;
    cv.n_splits = splits_;
    cv.train_fraction = train_fraction_;
    cv.lambda_grid = parse_grid(lambda_grid_);
    cv.kappa_grid = parse_grid(kappa_grid_);
    cv.seed = common_.seed;
    cv.threads = common_.thread_count();
    const CvResult r = cross_validate(x, pilot_options, base, cv);

    std::ostringstream table;
    table << "lambda,kappa,score\n";
    for (const auto& row : r.table) {
      table << io::format_double(row.lambda) << ',' << io::format_double(row.kappa) << ','
            << io::format_double(row.score) << '\n';
    }
    io::write_text(out_, table.str());

    json report = report_header("tune");
    report["config"] = {{"input", input_},
                        {"n", x.n()},
                        {"p", x.p()},
                        {"seed", common_.seed},
                        {"pilot", to_json(pilot_options)},
                        {"estimator", to_json(base)},
                        {"splits", splits_},
                        {"train_fraction", train_fraction_},
                        {"lambda_grid", cv.lambda_grid},
                        {"kappa_grid", cv.kappa_grid}};
    report["result"] = {{"lambda", r.lambda_hat},
                        {"kappa", r.kappa_hat},
                        {"splits_used", r.splits_used},
                        {"warnings", r.warnings}};
    report["outputs"] = {{"scores", out_}};
    write_json(common_.report_path(sibling(out_, ".json")), report);
  }

 private:
  std::string input_, out_;
  std::string lambda_grid_ = "linear";
  std::string kappa_grid_ = "1000,10000,100000";
  int splits_ = 5;
  double train_fraction_ = 0.75;
  PilotFlags pilot_;
  EstimatorFlags estimator_;
  CommonFlags common_;
};

// --------------------------------------------------------- scenario files

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(std::string("scenario field '") + key + "' has the wrong type");
  }
}

const std::vector<std::string> kScenarioKeys = {
    "schema_version", "structure",  "distribution", "n",           "p",
    "reps",           "seed",       "covariance_matched", "estimators", "pilot",
    "tuning",         "lambda",     "kappa",        "tau",         "rate_lambda",
    "mu",             "epsilon",    "max_iters",    "lambda_grid", "kappa_grid",
    "rate_lambda_grid", "cv_splits", "zero_tol"};

BenchmarkConfig scenario_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("scenario must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(kScenarioKeys.begin(), kScenarioKeys.end(), item.key()) == kScenarioKeys.end()) {
      throw InvalidInput("unknown scenario field '" + item.key() + "'");
    }
  }
  if (field<int>(j, "schema_version", 1) != 1) throw InvalidInput("unsupported scenario schema_version");
  BenchmarkConfig c;
  c.scenario.structure = parse_structure(field<std::string>(j, "structure", "banded"));
  c.scenario.distribution = parse_distribution(field<std::string>(j, "distribution", "normal"));
  c.scenario.n = field<Index>(j, "n", 100);
  c.scenario.p = field<Index>(j, "p", 100);
  c.scenario.reps = field<int>(j, "reps", 1);
  c.scenario.seed = field<std::uint64_t>(j, "seed", 0);
  c.scenario.covariance_matched = field<bool>(j, "covariance_matched", false);
  for (const auto& name :
       field<std::vector<std::string>>(j, "estimators", {"sam", "rate", "rpde", "rws", "arws1", "arws2"})) {
    c.estimators.push_back(parse_estimator_kind(name));
  }
  if (j.contains("pilot")) {
    PilotOptions p;
    p.method = parse_pilot_method(field<std::string>(j, "pilot", "sample"));
    c.pilot = p;
  }
  const auto tuning = field<std::string>(j, "tuning", "fixed");
  if (tuning == "fixed") {
    c.tuning = Tuning::Fixed;
  } else if (tuning == "cv") {
    c.tuning = Tuning::CrossValidated;
  } else {
    throw InvalidInput("tuning must be 'fixed' or 'cv'");
  }
  c.defaults.lambda = field<double>(j, "lambda", 0.05);
  c.defaults.kappa = field<double>(j, "kappa", 1e4);
  c.defaults.tau = field<double>(j, "tau", 1e-4);
  c.defaults.rate_lambda = field<double>(j, "rate_lambda", 1.0);
  c.defaults.mu = field<double>(j, "mu", 1.0);
  c.defaults.epsilon = field<double>(j, "epsilon", 1e-6);
  c.defaults.max_iters = field<int>(j, "max_iters", 5000);
  c.lambda_grid = field<std::vector<double>>(j, "lambda_grid", linear_lambda_grid());
  c.kappa_grid = field<std::vector<double>>(j, "kappa_grid", {1e3, 1e4, 1e5});
  c.rate_lambda_grid = field<std::vector<double>>(j, "rate_lambda_grid", log_grid(10, 0.1, 3.0));
  c.cv_splits = field<int>(j, "cv_splits", 5);
  c.zero_tol = field<double>(j, "zero_tol", 1e-8);
  return c;
}

json scenario_to_json(const BenchmarkConfig& c) {
  json j;
  j["schema_version"] = 1;
  j["structure"] = to_string(c.scenario.structure);
  j["distribution"] = to_string(c.scenario.distribution);
  j["n"] = c.scenario.n;
  j["p"] = c.scenario.p;
  j["reps"] = c.scenario.reps;
  j["seed"] = c.scenario.seed;
  j["covariance_matched"] = c.scenario.covariance_matched;
  std::vector<std::string> names;
  for (auto k : c.estimators) names.push_back(to_string(k));
  j["estimators"] = names;
  j["tuning"] = c.tuning == Tuning::Fixed ? "fixed" : "cv";
  j["lambda"] = c.defaults.lambda;
  j["kappa"] = c.defaults.kappa;
  j["tau"] = c.defaults.tau;
  j["rate_lambda"] = c.defaults.rate_lambda;
  j["mu"] = c.defaults.mu;
  j["epsilon"] = c.defaults.epsilon;
  j["max_iters"] = c.defaults.max_iters;
  if (c.tuning == Tuning::CrossValidated) {
    j["lambda_grid"] = c.lambda_grid;
    j["kappa_grid"] = c.kappa_grid;
    j["rate_lambda_grid"] = c.rate_lambda_grid;
    j["cv_splits"] = c.cv_splits;
  }
  j["zero_tol"] = c.zero_tol;
  return j;
}

// ---------------------------------------------------------------- simulate

class SimulateCommand : public Command {
 public:
  explicit SimulateCommand(CLI::App& root) {
    app = root.add_subcommand("simulate", "Write the true covariance and seeded data sets");
    app->add_option("--scenario", scenario_path_, "Scenario JSON (flags below override nothing)");
    app->add_option("--structure", structure_, "banded | block")->capture_default_str();
    app->add_option("--distribution", distribution_, "normal | t35 | skewt4 | ct5")
        ->capture_default_str();
    app->add_option("--n", n_, "Observations per data set")->capture_default_str();
    app->add_option("--p", p_, "Dimension")->capture_default_str();
    app->add_option("--reps", reps_, "Number of data sets")->capture_default_str();
    app->add_flag("--covariance-matched", matched_,
                  "Rescale t-type draws so their covariance equals the truth");
    app->add_option("--out-dir", out_dir_, "Output directory")->required();
    add_common_flags(app, common_);
  }

  void run() override {
    Stopwatch clock;
    ScenarioSpec s;
    if (!scenario_path_.empty()) {
      s = scenario_from_json(read_json_file(scenario_path_)).scenario;
    } else {
      s.structure = parse_structure(structure_);
      s.distribution = parse_distribution(distribution_);
      s.n = n_;
      s.p = p_;
      s.reps = reps_;
      s.covariance_matched = matched_;
    }
    if (common_.seed_given() || scenario_path_.empty()) s.seed = common_.seed;
    const SymmetricMatrix truth = true_covariance(s);
    std::filesystem::create_directories(out_dir_);
    const std::string truth_path = (std::filesystem::path(out_dir_) / "truth.csv").string();
    io::write_matrix_csv(truth_path, truth.matrix());
    json files = json::array();
    json contaminated = json::array();
    for (int r = 0; r < s.reps; ++r) {
      char name[32];
      std::snprintf(name, sizeof name, "rep_%04d.csv", r);
      const std::string path = (std::filesystem::path(out_dir_) / name).string();
      const Draw d = sample_draw(s, truth, r);
      io::write_data_csv(path, d.data.values());
      files.push_back(path);
      int marked = 0;
      for (bool b : d.contaminated) marked += b ? 1 : 0;
      contaminated.push_back(marked);
    }
    BenchmarkConfig echo;
    echo.scenario = s;
    json config = scenario_to_json(echo);
    for (const char* k : {"estimators", "tuning", "lambda", "kappa", "tau", "rate_lambda", "mu",
                          "epsilon", "max_iters", "zero_tol"}) {
      config.erase(k);
    }
    json report = report_header("simulate");
    report["config"] = config;
    report["config"]["t_scale"] = s.covariance_matched ? "covariance" : "scale matrix";
    report["config"]["skew_t"] = "skew-normal shape 10*1 on the correlation scale, 4 df";
    json result = spectrum_summary(truth);
    if (s.distribution == Distribution::ContamT5) result["contaminated_rows"] = contaminated;
    report["result"] = result;
    report["outputs"] = {{"truth", truth_path}, {"data", files}};
    write_json(common_.report_path((std::filesystem::path(out_dir_) / "report.json").string()), report);
  }

 private:
  std::string scenario_path_, out_dir_;
  std::string structure_ = "banded", distribution_ = "normal";
  Index n_ = 100, p_ = 100;
  int reps_ = 1;
  bool matched_ = false;
  CommonFlags common_;
};

// ------------------------------------------------------------------- bench

class BenchCommand : public Command {
 public:
  explicit BenchCommand(CLI::App& root) {
    app = root.add_subcommand("bench", "Run a simulation scenario and summarize each estimator");
    app->add_option("--scenario", scenario_path_, "Scenario JSON")->required();
    app->add_option("--out", out_, "Summary CSV")->required();
    app->add_option("--markdown", markdown_, "Markdown table (default: next to --out)");
    app->add_option("--reps-out", reps_out_, "Per-repetition CSV");
    add_common_flags(app, common_);
  }

  void run() override {
    Stopwatch clock;
    BenchmarkConfig config = scenario_from_json(read_json_file(scenario_path_));
    if (common_.seed_given()) config.scenario.seed = common_.seed;
    config.threads = common_.thread_count();
    const BenchmarkReport r = run_benchmark(config);
    io::write_text(out_, summary_csv(r));
    const std::string md = markdown_.empty() ? sibling(out_, ".md") : markdown_;
    io::write_text(md, summary_markdown(r));
    if (!reps_out_.empty()) io::write_text(reps_out_, reps_csv(r));

    json report = report_header("bench");
    report["config"] = scenario_to_json(config);
    report["config"]["pilot"] = r.pilot;
    json rows = json::array();
    bool converged = true;
    for (const auto& rep : r.reps) converged = converged && rep.converged;
    for (const auto& e : r.summary) {
      rows.push_back({{"estimator", e.estimator},
                      {"reps_ok", e.reps_ok},
                      {"failures", e.failures},
                      {"spec_mean", num(e.spec_err.mean)},
                      {"frob_mean", num(e.frob_err.mean)},
                      {"fsl_percent_mean", num(e.fsl_percent.mean)},
                      {"pd_percent", e.pd_percent},
                      {"feasible_percent", e.feasible_percent}});
    }
    report["result"] = {{"summary", rows}, {"failures", r.failures}, {"all_converged", converged}};
    json outputs = {{"summary", out_}, {"markdown", md}};
    if (!reps_out_.empty()) outputs["reps"] = reps_out_;
    report["outputs"] = outputs;
    write_json(common_.report_path(sibling(out_, ".json")), report);
    check_converged(common_, converged);
  }

 private:
  std::string scenario_path_, out_, markdown_, reps_out_;
  CommonFlags common_;
};

// --------------------------------------------------------------------- lda

struct LabeledData {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

LabeledData read_labeled(const std::string& path, const std::string& label_column) {
  const io::Table t = io::read_numeric_csv(path);
  Index label = t.values.cols() - 1;
  if (!label_column.empty()) {
    const auto it = std::find(t.header.begin(), t.header.end(), label_column);
    if (it == t.header.end()) throw InvalidInput(path + ": no column named '" + label_column + "'");
    label = static_cast<Index>(it - t.header.begin());
  }
  if (t.values.cols() < 2) throw InvalidInput(path + ": need a label and at least one feature");
  LabeledData out;
  out.x.resize(t.values.rows(), t.values.cols() - 1);
  for (Index i = 0; i < t.values.rows(); ++i) {
    Index k = 0;
    for (Index j = 0; j < t.values.cols(); ++j) {
      if (j != label) out.x(i, k++) = t.values(i, j);
    }
    const double v = t.values(i, label);
    if (v != 0.0 && v != 1.0) throw InvalidInput(path + ": labels must be 0 or 1");
    out.y.push_back(static_cast<int>(v));
  }
  return out;
}

class LdaCommand : public Command {
 public:
  explicit LdaCommand(CLI::App& root) {
    app = root.add_subcommand("lda", "Two-class linear discriminant with a plug-in estimate");
    app->add_flag("--experiment", experiment_,
                  "Run the simulated banded experiment instead of classifying files");
    app->add_option("--train", train_, "Training CSV with a 0/1 label column");
    app->add_option("--test", test_, "Test CSV with a 0/1 label column");
    app->add_option("--label-column", label_column_, "Label column name (default: last column)");
    app->add_option("--out", out_, "Predictions CSV, or the experiment table")->required();
    app->add_option("--p", p_, "Experiment: dimension")->capture_default_str();
    app->add_option("--reps", reps_, "Experiment: repetitions")->capture_default_str();
    app->add_option("--train-per-class", train_per_class_, "Experiment: training rows per class")
        ->capture_default_str();
    app->add_option("--test-per-class", test_per_class_, "Experiment: test rows per class")
        ->capture_default_str();
    app->add_option("--mean-shift", mean_shift_, "Experiment: class-1 mean (every coordinate)")
        ->capture_default_str();
    app->add_option("--kappas", kappas_, "Experiment: condition bounds")->capture_default_str();
    app->add_option("--taus", taus_, "Experiment: eigenvalue floors")->capture_default_str();
    add_estimator_flags(app, estimator_);
    add_common_flags(app, common_);
  }

  void run() override {
    Stopwatch clock;
    if (experiment_) {
      run_experiment();
    } else {
      run_files();
    }
  }

 private:
  void run_experiment() {
    LdaExperimentConfig c;
    c.p = p_;
    c.reps = reps_;
    c.train_per_class = train_per_class_;
    c.test_per_class = test_per_class_;
    c.mean_shift = mean_shift_;
    c.seed = common_.seed;
    c.lambda = app->get_option("--lambda")->count() > 0 ? estimator_.lambda : 0.05;
    c.kappas = parse_grid(kappas_);
    c.taus = parse_grid(taus_);
    c.mu = estimator_.mu;
    c.epsilon = estimator_.epsilon;
    c.max_iters = estimator_.max_iters;
    c.threads = common_.thread_count();
    const auto rows = run_lda_experiment(c);
    std::ostringstream table;
    table << "method,parameter,error_mean,error_sd,cond_mean,cond_sd\n";
    json result = json::array();
    for (const auto& r : rows) {
      table << r.method << ',' << io::format_double(r.parameter) << ','
            << io::format_double(r.error.mean) << ',' << io::format_double(r.error.sd) << ','
            << io::format_double(r.cond.mean) << ',' << io::format_double(r.cond.sd) << '\n';
      result.push_back({{"method", r.method},
                        {"parameter", r.parameter},
                        {"error_mean", r.error.mean},
                        {"error_sd", r.error.sd}});
    }
    io::write_text(out_, table.str());
    json report = report_header("lda");
    report["config"] = {{"mode", "experiment"},
                        {"p", c.p},
                        {"reps", c.reps},
                        {"train_per_class", c.train_per_class},
                        {"test_per_class", c.test_per_class},
                        {"mean_shift", c.mean_shift},
                        {"seed", c.seed},
                        {"lambda", c.lambda},
                        {"kappas", c.kappas},
                        {"taus", c.taus}};
    report["result"] = result;
    report["outputs"] = {{"table", out_}};
    write_json(common_.report_path(sibling(out_, ".json")), report);
  }

  void run_files() {
    if (train_.empty() || test_.empty()) throw InvalidInput("--train and --test are required");
    const LabeledData train = read_labeled(train_, label_column_);
    const LabeledData test = read_labeled(test_, label_column_);
    const PilotEstimate pilot = pooled_covariance(train.x, train.y);
    const EstimatorSpec spec = estimator_.spec();
    const FitResult fitted = fit(pilot, train.x.rows(), spec);
    const LdaPrediction pred = lda_fit_predict(train.x, train.y, test.x, test.y, fitted.estimate);
    std::ostringstream table;
    table << "row,label,predicted\n";
    for (std::size_t i = 0; i < pred.labels.size(); ++i) {
      table << i << ',' << test.y[i] << ',' << pred.labels[i] << '\n';
    }
    io::write_text(out_, table.str());
    json report = report_header("lda");
    report["config"] = {{"mode", "files"},
                        {"train", train_},
                        {"test", test_},
                        {"seed", common_.seed},
                        {"pilot", "pooled within-class covariance"},
                        {"estimator", to_json(spec)}};
    json result = spectrum_summary(fitted.estimate);
    result["error_rate"] = pred.error_rate;
    bool converged = true;
    if (fitted.solve) {
      result["iterations"] = fitted.solve->iterations;
      result["converged"] = fitted.solve->converged;
      converged = fitted.solve->converged;
    }
    report["result"] = result;
    report["outputs"] = {{"predictions", out_}};
    write_json(common_.report_path(sibling(out_, ".json")), report);
    check_converged(common_, converged);
  }

  bool experiment_ = false;
  std::string train_, test_, label_column_, out_;
  Index p_ = 200;
  int reps_ = 20;
  Index train_per_class_ = 100, test_per_class_ = 100;
  double mean_shift_ = 3.0;
  std::string kappas_ = "1000,10000,100000,1000000";
  std::string taus_ = "0.001,0.0001,0.00001,0.000001";
  EstimatorFlags estimator_;
  CommonFlags common_;
};

// --------------------------------------------------------------- portfolio

class PortfolioCommand : public Command {
 public:
  explicit PortfolioCommand(CLI::App& root) {
    app = root.add_subcommand("portfolio", "Rolling-window minimum-variance portfolio backtest");
    app->add_option("--input", input_, "Returns CSV: date column then one column per asset")
        ->required();
    app->add_option("--out", out_, "Out-of-sample return series CSV")->required();
    app->add_option("--window", window_, "Estimation window in periods")->capture_default_str();
    app->add_flag("--cv", cv_, "Re-tune (lambda, kappa) at every step");
    app->add_option("--lambda-grid", lambda_grid_, "Tuning grid for lambda")->capture_default_str();
    app->add_option("--kappa-grid", kappa_grid_, "Tuning grid for kappa")->capture_default_str();
    app->add_option("--splits", splits_, "Random splits per tuning run")->capture_default_str();
    add_pilot_flags(app, pilot_);
    add_estimator_flags(app, estimator_);
    add_common_flags(app, common_);
  }

  void run() override {
    Stopwatch clock;
    const io::ReturnsTable table = io::read_returns_csv(input_);
    BacktestSpec spec;
    spec.returns = table.returns;
    spec.window = window_;
    spec.estimator = estimator_.spec();
    spec.pilot = pilot_.options(common_.seed);
    if (cv_) {
      CvSpec cv;
      cv.n_splits = splits_;
      cv.lambda_grid = parse_grid(lambda_grid_);
      cv.kappa_grid = parse_grid(kappa_grid_);
      cv.seed = common_.seed;
      cv.threads = common_.thread_count();
      spec.cv = cv;
    }
    const BacktestResult r = backtest(spec);
    std::ostringstream series;
    series << "date,return\n";
    for (std::size_t i = 0; i < r.returns.size(); ++i) {
      series << table.dates[static_cast<std::size_t>(r.periods[i])] << ','
             << io::format_double(r.returns[i]) << '\n';
    }
    io::write_text(out_, series.str());
    json report = report_header("portfolio");
    report["config"] = {{"input", input_},
                        {"periods", table.returns.rows()},
                        {"assets", table.returns.cols()},
                        {"window", window_},
                        {"seed", common_.seed},
                        {"pilot", to_json(spec.pilot)},
                        {"estimator", to_json(spec.estimator)},
                        {"cv", cv_}};
    if (cv_) {
      report["config"]["lambda_grid"] = spec.cv->lambda_grid;
      report["config"]["kappa_grid"] = spec.cv->kappa_grid;
      report["config"]["splits"] = splits_;
    }
    report["result"] = {{"out_of_sample", r.returns.size()},
                        {"skipped", r.skipped},
                        {"mean_percent", num(r.mean_percent)},
                        {"sd_percent", num(r.sd_percent)},
                        {"sharpe_percent", num(r.sharpe_percent)},
                        {"warnings", r.warnings}};
    report["outputs"] = {{"returns", out_}};
    write_json(common_.report_path(sibling(out_, ".json")), report);
    if (common_.strict && r.skipped > 0) throw NumericalFailure("some periods were skipped");
  }

 private:
  std::string input_, out_;
  Index window_ = 120;
  bool cv_ = false;
  std::string lambda_grid_ = "linear";
  std::string kappa_grid_ = "10000,100000,1000000";
  int splits_ = 5;
  PilotFlags pilot_;
  EstimatorFlags estimator_;
  CommonFlags common_;
};

}  // namespace

std::vector<std::unique_ptr<Command>> register_commands(CLI::App& root) {
  std::vector<std::unique_ptr<Command>> out;
  out.push_back(std::make_unique<EstimateCommand>(root));
  out.push_back(std::make_unique<ProjectCommand>(root));
  out.push_back(std::make_unique<TuneCommand>(root));
  out.push_back(std::make_unique<SimulateCommand>(root));
  out.push_back(std::make_unique<BenchCommand>(root));
  out.push_back(std::make_unique<LdaCommand>(root));
  out.push_back(std::make_unique<PortfolioCommand>(root));
  return out;
}

}  // namespace rws::cli
