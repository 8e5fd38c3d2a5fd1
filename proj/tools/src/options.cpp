#include "options.hpp"

#include "rws/errors.hpp"
#include "rws/io.hpp"
#include "rws/model_selection.hpp"
#include "rws/parallel.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace rws::cli {

int CommonFlags::thread_count() const { return threads > 0 ? threads : default_thread_count(); }

std::string CommonFlags::report_path(const std::string& fallback) const {
  return report.empty() ? fallback : report;
}

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
  flags.seed_option = sub->add_option("--seed", flags.seed, "Seed for every random draw");
  sub->add_option("--threads", flags.threads, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_flag("--strict", flags.strict, "Exit with status 3 when the solver does not converge");
  sub->add_option("--report", flags.report, "Path of the JSON run report");
}

PilotOptions PilotFlags::options(std::uint64_t seed) const {
  PilotOptions o;
  o.method = parse_pilot_method(method);
  o.fisher_constant = fisher_constant;
  o.allow_degenerate_scale = allow_degenerate_scale;
  o.huber.constant = huber_constant;
  o.huber.shared_h = huber_h;
  o.mom.groups = groups;
  o.mom.shuffle = shuffle;
  o.mom.seed = seed;
  return o;
}

void add_pilot_flags(CLI::App* sub, PilotFlags& flags) {
  sub->add_option("--pilot", flags.method, "Pilot estimator: sample | rank | huber | mom")
      ->capture_default_str();
  sub->add_option("--fisher-constant", flags.fisher_constant,
                  "Rank pilot: MAD consistency constant")
      ->capture_default_str();
  sub->add_flag("--allow-degenerate-scale", flags.allow_degenerate_scale,
                "Rank pilot: floor a zero MAD instead of failing");
  sub->add_option("--huber-constant", flags.huber_constant,
                  "Huber pilot: multiplier of the adaptive truncation level")
      ->capture_default_str();
  sub->add_option("--huber-h", flags.huber_h, "Huber pilot: one truncation level for every entry");
  sub->add_option("--groups", flags.groups, "Median-of-means: number of groups (0: min(n, 10))")
      ->capture_default_str();
  sub->add_flag("--shuffle", flags.shuffle, "Median-of-means: shuffle rows before grouping");
}

EstimatorSpec EstimatorFlags::spec() const {
  EstimatorSpec e;
  e.kind = parse_estimator_kind(variant);
  e.lambda = lambda;
  e.kappa = kappa;
  e.tau = tau;
  e.rate_lambda = rate_lambda;
  e.mu = mu;
  e.epsilon = epsilon;
  e.max_iters = max_iters;
  e.warm_start_rate = !no_warm_start;
  e.accept_feasible_start = accept_feasible;
  return e;
}

void add_estimator_flags(CLI::App* sub, EstimatorFlags& flags) {
  sub->add_option("--variant", flags.variant,
                  "Estimator: rws | arws1 | arws2 | rpde | corr | rate | sam")
      ->capture_default_str();
  sub->add_option("--lambda", flags.lambda, "Penalty level (threshold level for rate)")
      ->capture_default_str();
  sub->add_option("--kappa", flags.kappa, "Condition number bound")->capture_default_str();
  sub->add_option("--tau", flags.tau, "Eigenvalue floor for rpde")->capture_default_str();
  sub->add_option("--rate-lambda", flags.rate_lambda,
                  "Threshold level of the thresholded pilot used as warm start and for arws2")
      ->capture_default_str();
  sub->add_option("--mu", flags.mu, "Augmented Lagrangian step")->capture_default_str();
  sub->add_option("--epsilon", flags.epsilon, "Stopping tolerance")->capture_default_str();
  sub->add_option("--max-iters", flags.max_iters, "Iteration cap")->capture_default_str();
  sub->add_flag("--no-warm-start", flags.no_warm_start, "Start the solver from the raw pilot");
  sub->add_flag("--accept-feasible", flags.accept_feasible,
                "Return the starting point when it already satisfies the constraint");
}

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json to_json(const PilotOptions& p) {
  json j;
  j["method"] = to_string(p.method);
  switch (p.method) {
    case PilotMethod::Rank:
      j["fisher_constant"] = p.fisher_constant;
      j["allow_degenerate_scale"] = p.allow_degenerate_scale;
      break;
    case PilotMethod::Huber:
      j["huber_constant"] = p.huber.constant;
      if (p.huber.shared_h) j["huber_h"] = *p.huber.shared_h;
      break;
    case PilotMethod::MedianOfMeans:
      j["groups"] = p.mom.groups;
      j["shuffle"] = p.mom.shuffle;
      break;
    default: break;
  }
  return j;
}

json to_json(const EstimatorSpec& e) {
  json j;
  j["variant"] = to_string(e.kind);
  j["lambda"] = e.lambda;
  if (uses_kappa(e.kind)) j["kappa"] = e.kappa;
  if (e.kind == EstimatorKind::Rpde) j["tau"] = e.tau;
  if (uses_solver(e.kind)) {
    j["rate_lambda"] = e.rate_lambda;
    j["mu"] = e.mu;
    j["epsilon"] = e.epsilon;
    j["max_iters"] = e.max_iters;
    j["warm_start_rate"] = e.warm_start_rate;
    j["accept_feasible_start"] = e.accept_feasible_start;
  }
  return j;
}

std::vector<double> parse_grid(const std::string& text) {
  if (text == "linear") return linear_lambda_grid();
  if (text == "log") return log_grid(20, 0.01, 1.0);
  if (text.rfind("log:", 0) == 0) {
    std::istringstream in(text.substr(4));
    std::string a, b, c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
      throw InvalidInput("grid '" + text + "' is not log:COUNT:LO:HI");
    }
    try {
      return log_grid(std::stoi(a), std::stod(b), std::stod(c));
    } catch (const std::logic_error&) {
      throw InvalidInput("grid '" + text + "' is not log:COUNT:LO:HI");
    }
  }
  std::vector<double> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw InvalidInput("grid value '" + cell + "' is not a number");
    }
  }
  if (out.empty()) throw InvalidInput("empty grid");
  return out;
}

json report_header(const std::string& command) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  return j;
}

void write_json(const std::string& path, const json& j) { io::write_text(path, j.dump(2) + "\n"); }

std::string sibling(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  p.replace_extension();
  return p.string() + suffix;
}

}  // namespace rws::cli
