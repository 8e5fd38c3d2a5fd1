#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace rws {

using Index = Eigen::Index;

/// Dense real symmetric matrix. Construction symmetrizes the input as
/// (A + A^T) / 2, so entry(i, j) == entry(j, i) holds bit-for-bit.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  /// Throws InvalidInput for non-square, empty or non-finite input.
  explicit SymmetricMatrix(const Eigen::MatrixXd& raw);

  static SymmetricMatrix identity(Index p);
  static SymmetricMatrix zero(Index p);
  static SymmetricMatrix diagonal(const Eigen::VectorXd& d);

  Index dim() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator*(double c, const SymmetricMatrix& a);

/// Eigenvalues sorted descending; column i of `vectors` pairs with values(i).
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  /// U diag(values) U^T.
  Eigen::MatrixXd reconstruct() const;
  /// U diag(d) U^T for a replacement spectrum d.
  Eigen::MatrixXd reconstruct(const Eigen::VectorXd& d) const;
};

EigenDecomposition sym_eig(const SymmetricMatrix& a);

namespace detail {
// Raw-matrix variant used on hot paths; reads only the lower triangle.
EigenDecomposition sym_eig(const Eigen::MatrixXd& a);
}  // namespace detail

struct MatrixNorms {
  double spectral = 0.0;
  double frobenius = 0.0;
  double max_abs = 0.0;
  double l1_off = 0.0;
};

MatrixNorms matrix_norms(const SymmetricMatrix& a);

/// gamma_max / gamma_min, or +infinity when gamma_min <= 0.
double condition_number(const SymmetricMatrix& a);
double condition_number(const EigenDecomposition& eig);

bool is_positive_definite(const SymmetricMatrix& a, double tol = 0.0);

double min_eigenvalue(const SymmetricMatrix& a);

/// Number of entries with |a_ij| > tol (both triangles and the diagonal).
std::size_t count_nonzeros(const Eigen::MatrixXd& a, double tol = 0.0);

}  // namespace rws
