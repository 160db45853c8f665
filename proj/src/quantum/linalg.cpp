#include "nkaq/quantum/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace nkaq::quantum {

Matrix hermitize(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol * (1.0 + max_abs(a));
}

double min_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool loewner_leq(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("loewner_leq: operands have different dimensions");
  }
  if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) {
    throw std::invalid_argument("loewner_leq: non-Hermitian operand");
  }
  return min_eigenvalue(b - a) >= -tol;
}

bool is_psd(const Matrix& a, double tol) {
  return is_hermitian(a, tol) && min_eigenvalue(a) >= -tol;
}

Matrix kernel_projector(const Matrix& a, double threshold) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a));
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  Matrix p = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < threshold) p += vecs.col(i) * vecs.col(i).adjoint();
  }
  return p;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix ket_bra(int d, int i, int j) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

}  // namespace nkaq::quantum
