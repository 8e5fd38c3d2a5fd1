#include "rws/matrix.hpp"

#include "rws/errors.hpp"

#include <cmath>
#include <limits>

namespace rws {

SymmetricMatrix::SymmetricMatrix(const Eigen::MatrixXd& raw) {
  if (raw.rows() == 0 || raw.rows() != raw.cols()) {
    throw InvalidInput("symmetric matrix must be square and non-empty");
  }
  if (!raw.allFinite()) {
    throw InvalidInput("symmetric matrix has non-finite entries");
  }
  m_ = 0.5 * (raw + raw.transpose());
}

SymmetricMatrix SymmetricMatrix::identity(Index p) {
  return SymmetricMatrix(Eigen::MatrixXd::Identity(p, p));
}

SymmetricMatrix SymmetricMatrix::zero(Index p) {
  return SymmetricMatrix(Eigen::MatrixXd::Zero(p, p));
}

SymmetricMatrix SymmetricMatrix::diagonal(const Eigen::VectorXd& d) {
  return SymmetricMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in matrix sum");
  return SymmetricMatrix(a.matrix() + b.matrix());
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in matrix difference");
  return SymmetricMatrix(a.matrix() - b.matrix());
}

SymmetricMatrix operator*(double c, const SymmetricMatrix& a) {
  return SymmetricMatrix(c * a.matrix());
}

Eigen::MatrixXd EigenDecomposition::reconstruct() const { return reconstruct(values); }

Eigen::MatrixXd EigenDecomposition::reconstruct(const Eigen::VectorXd& d) const {
  Eigen::MatrixXd scaled = vectors * d.asDiagonal();
  Eigen::MatrixXd out = scaled * vectors.transpose();
  // Round-off leaves the product slightly asymmetric.
  return 0.5 * (out + out.transpose());
}

namespace detail {

EigenDecomposition sym_eig(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw InvalidInput("sym_eig: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw SolverFailure("sym_eig: eigen solver did not converge");
  }
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace detail

EigenDecomposition sym_eig(const SymmetricMatrix& a) { return detail::sym_eig(a.matrix()); }

MatrixNorms matrix_norms(const SymmetricMatrix& a) {
  MatrixNorms n;
  const auto& m = a.matrix();
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
  n.spectral = ev.cwiseAbs().maxCoeff();
  n.frobenius = m.norm();
  n.max_abs = m.cwiseAbs().maxCoeff();
  n.l1_off = m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
  return n;
}

double condition_number(const EigenDecomposition& eig) {
  const double lo = eig.values(eig.values.size() - 1);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return eig.values(0) / lo;
}

double condition_number(const SymmetricMatrix& a) {
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a.matrix(), Eigen::EigenvaluesOnly)
          .eigenvalues();
  const double lo = ev(0);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return ev(ev.size() - 1) / lo;
}

double min_eigenvalue(const SymmetricMatrix& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a.matrix(), Eigen::EigenvaluesOnly)
      .eigenvalues()(0);
}

bool is_positive_definite(const SymmetricMatrix& a, double tol) {
  if (tol < 0.0) throw InvalidInput("is_positive_definite: tol must be nonnegative");
  return min_eigenvalue(a) > tol;
}

std::size_t count_nonzeros(const Eigen::MatrixXd& a, double tol) {
  std::size_t count = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j)) > tol) ++count;
    }
  }
  return count;
}

}  // namespace rws
