#pragma once

#include "rws/estimators.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rws::cli {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Raised to exit with status 3 (numerical failure under --strict).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::uint64_t seed = 0;
  int threads = 0;  // 0: all available cores
  bool strict = false;
  std::string report;
  CLI::Option* seed_option = nullptr;

  bool seed_given() const { return seed_option && seed_option->count() > 0; }
  int thread_count() const;
  /// --report if given, else `fallback`.
  std::string report_path(const std::string& fallback) const;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags);

struct PilotFlags {
  std::string method = "sample";
  double fisher_constant = kMadConsistency;
  bool allow_degenerate_scale = false;
  double huber_constant = 1.0;
  std::optional<double> huber_h;
  int groups = 0;
  bool shuffle = false;

  PilotOptions options(std::uint64_t seed) const;
};

void add_pilot_flags(CLI::App* sub, PilotFlags& flags);

struct EstimatorFlags {
  std::string variant = "rws";
  double lambda = 0.1;
  double kappa = 1e4;
  double tau = 1e-4;
  double rate_lambda = 1.0;
  double mu = 1.0;
  double epsilon = 1e-6;
  int max_iters = 5000;
  bool no_warm_start = false;
  bool accept_feasible = false;

  EstimatorSpec spec() const;
};

void add_estimator_flags(CLI::App* sub, EstimatorFlags& flags);

/// Finite values as JSON numbers; infinities and NaN as the strings "inf",
/// "-inf" and "nan".
json num(double v);
json to_json(const PilotOptions& p);
json to_json(const EstimatorSpec& e);

/// "linear" (0.01 step 0.05, 20 points), "log" (20 points in [0.01, 1]),
/// "log:COUNT:LO:HI", or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

/// Report skeleton with the schema version and the command name.
json report_header(const std::string& command);
void write_json(const std::string& path, const json& j);

/// `path` with its extension replaced by `suffix`.
std::string sibling(const std::string& path, const std::string& suffix);

}  // namespace rws::cli
