#pragma once

#include "rws/data.hpp"
#include "rws/matrix.hpp"
#include "rws/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rws {

enum class Structure { Banded, BlockDiagonal };
enum class Distribution { Normal, T35, SkewT4, ContamT5 };

std::string to_string(Structure s);
std::string to_string(Distribution d);
/// "banded" | "block" (also "blockdiagonal").
Structure parse_structure(const std::string& name);
/// "normal" | "t35" | "skewt4" | "ct5".
Distribution parse_distribution(const std::string& name);

struct ScenarioSpec {
  Structure structure = Structure::Banded;
  Distribution distribution = Distribution::Normal;
  Index n = 100;
  Index p = 100;
  std::uint64_t seed = 0;
  int reps = 1;
  /// Rescale t-type draws so their covariance equals Sigma* rather than
  /// Sigma* df / (df - 2).
  bool covariance_matched = false;
};

/// Throws InvalidInput for nonpositive sizes or an odd p with BlockDiagonal.
void validate(const ScenarioSpec& spec);

/// Banded: max(1 - |i - j| / 10, 0). BlockDiagonal: blockdiag(A + delta I, 4I)
/// with A drawn from the Structure stream of `spec.seed`.
SymmetricMatrix true_covariance(const ScenarioSpec& spec);

struct Draw {
  DataMatrix data;
  /// Per row: drawn from the contaminating component (ContamT5 only).
  std::vector<bool> contaminated;
};

/// n rows for repetition `rep`, from the Data stream keyed by (seed, rep).
/// Throws InvalidInput when sigma_star is not positive definite.
Draw sample_draw(const ScenarioSpec& spec, const SymmetricMatrix& sigma_star, int rep = 0);
DataMatrix sample(const ScenarioSpec& spec, const SymmetricMatrix& sigma_star, int rep = 0);

/// Gaussian rows N(mean, sigma) using the given generator.
Eigen::MatrixXd normal_rows(std::mt19937_64& rng, Index n, const Eigen::VectorXd& mean,
                            const SymmetricMatrix& sigma);

}  // namespace rws
