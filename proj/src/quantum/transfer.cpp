#include "nkaq/quantum/transfer.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "nkaq/quantum/kernels.hpp"

namespace nkaq::quantum {

Matrix transfer_of(const Superoperator& e) { return transfer_matrix(e.kraus(), Exec::parallel); }

Matrix choi_of_transfer(const Matrix& t, int in_dim, int out_dim) {
  const int din = in_dim;
  const int dout = out_dim;
  Matrix j(din * dout, din * dout);
  for (int i = 0; i < din; ++i) {
    for (int jj = 0; jj < din; ++jj) {
      for (int k = 0; k < dout; ++k) {
        for (int l = 0; l < dout; ++l) j(i * dout + k, jj * dout + l) = t(k + dout * l, i + din * jj);
      }
    }
  }
  return j;
}

Superoperator superop_of_transfer(const Matrix& t, int in_dim, int out_dim, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(choi_of_transfer(t, in_dim, out_dim)));
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const double cut = floor * (1.0 + std::max(0.0, vals.maxCoeff()));
  std::vector<Matrix> ks;
  for (Eigen::Index e = 0; e < vals.size(); ++e) {
    if (vals[e] <= cut) continue;
    const double s = std::sqrt(vals[e]);
    Matrix k(out_dim, in_dim);
    for (int i = 0; i < in_dim; ++i) {
      for (int r = 0; r < out_dim; ++r) k(r, i) = s * vecs(i * out_dim + r, e);
    }
    ks.push_back(std::move(k));
  }
  return Superoperator(in_dim, out_dim, std::move(ks));
}

StarSum geometric_series(const Matrix& s, const Matrix& x, Side side, const StarPolicy& policy) {
  StarSum r;
  r.value = x;
  r.terms = 1;
  Matrix power = s;  // S^N where N = r.terms
  while (true) {
    const Matrix block = side == Side::left ? Matrix(r.value * power) : Matrix(power * r.value);
    const double inc = max_abs(block);
    r.value += block;
    r.terms *= 2;
    if (inc < policy.tol) {
      r.converged = true;
      return r;
    }
    if (!std::isfinite(inc) || max_abs(r.value) > policy.blowup || r.terms >= policy.max_terms) {
      return r;
    }
    power = power * power;
  }
}

SparseMatrix sparse_transfer_of(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("sparse_transfer_of needs at least one Kraus operator");
  const auto n = kraus.front().rows() * kraus.front().cols();
  SparseMatrix t(n, n);
  for (const auto& k : kraus) {
    const SparseMatrix sk = k.sparseView(1.0, kSparsePrune);
    const SparseMatrix ck = SparseMatrix(sk.conjugate());
    t += SparseMatrix(Eigen::kroneckerProduct(ck, sk));
  }
  t.prune(1.0, kSparsePrune);
  return t;
}

SparseMatrix sparse_identity(int n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

SparseStarSum geometric_series(const SparseMatrix& s, const SparseMatrix& x, Side side,
                               const StarPolicy& policy, double prune_below) {
  SparseStarSum r;
  r.value = x;
  r.terms = 1;
  SparseMatrix power = s;
  while (true) {
    SparseMatrix block = side == Side::left ? SparseMatrix(r.value * power) : SparseMatrix(power * r.value);
    block.prune(1.0, prune_below);
    const double inc = max_abs(block);
    r.value += block;
    r.terms *= 2;
    if (inc < policy.tol) {
      r.converged = true;
      return r;
    }
    if (!std::isfinite(inc) || max_abs(r.value) > policy.blowup || r.terms >= policy.max_terms) {
      return r;
    }
    power = SparseMatrix(power * power);
    power.prune(1.0, prune_below);
  }
}

}  // namespace nkaq::quantum
