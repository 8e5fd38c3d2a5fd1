#pragma once

#include "rws/errors.hpp"
#include "rws/matrix.hpp"

#include <Eigen/Dense>

namespace rws {

/// n observations (rows) of a p-dimensional variable. n >= 2, entries finite.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Eigen::MatrixXd rows) : x_(std::move(rows)) {
    if (x_.rows() < 2) throw InsufficientData("data matrix needs at least two observations");
    if (x_.cols() < 1) throw InvalidInput("data matrix needs at least one column");
    if (!x_.allFinite()) throw InvalidInput("data matrix has non-finite entries");
  }

  Index n() const noexcept { return x_.rows(); }
  Index p() const noexcept { return x_.cols(); }
  const Eigen::MatrixXd& values() const noexcept { return x_; }
  auto row(Index i) const { return x_.row(i); }
  auto col(Index j) const { return x_.col(j); }

  /// Observations at the given row indices, in that order.
  template <typename IndexRange>
  DataMatrix subset(const IndexRange& rows) const {
    Eigen::MatrixXd out(static_cast<Index>(rows.size()), x_.cols());
    Index k = 0;
    for (auto r : rows) out.row(k++) = x_.row(static_cast<Index>(r));
    return DataMatrix(std::move(out));
  }

 private:
  Eigen::MatrixXd x_;
};

}  // namespace rws
