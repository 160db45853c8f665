#include "nkaq/quantum/superop.hpp"

#include "nkaq/quantum/kernels.hpp"
#include "nkaq/quantum/transfer.hpp"

namespace nkaq::quantum {

Superoperator::Superoperator(int in_dim, int out_dim, std::vector<Matrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim <= 0 || out_dim <= 0) throw std::invalid_argument("superoperator dimension must be positive");
  if (kraus_.empty()) kraus_.push_back(Matrix::Zero(out_dim, in_dim));
  for (const auto& k : kraus_) {
    if (k.rows() != out_dim || k.cols() != in_dim) {
      throw DimensionMismatch("Kraus operator shape does not match superoperator dimensions");
    }
  }
}

Superoperator::Superoperator(std::vector<Matrix> kraus) {
  // Dimensions are read before the operators are moved: argument evaluation
  // order would make a delegating constructor read a moved-from vector.
  const int in = kraus.empty() ? 0 : static_cast<int>(kraus.front().cols());
  const int out = kraus.empty() ? 0 : static_cast<int>(kraus.front().rows());
  *this = Superoperator(in, out, std::move(kraus));
}

Superoperator Superoperator::identity(int d) { return Superoperator(d, d, {Matrix::Identity(d, d)}); }

Superoperator Superoperator::zero(int in_dim, int out_dim) { return Superoperator(in_dim, out_dim, {}); }

Superoperator Superoperator::unitary(const Matrix& u) {
  return Superoperator(static_cast<int>(u.cols()), static_cast<int>(u.rows()), {u});
}

Matrix Superoperator::apply(const Matrix& rho) const {
  if (rho.rows() != in_dim_ || rho.cols() != in_dim_) {
    throw DimensionMismatch("input state dimension does not match superoperator");
  }
  return apply_kraus(kraus_, rho, Exec::parallel);
}

Matrix Superoperator::kraus_gram() const {
  Matrix g = Matrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) g += k.adjoint() * k;
  return g;
}

DensityOperator::DensityOperator(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw DimensionMismatch("density operator must be square");
  if (!is_psd(m_, tol)) throw std::invalid_argument("density operator is not positive semidefinite");
  if (m_.trace().real() > 1.0 + tol) throw std::invalid_argument("density operator has trace above 1");
}

Effect::Effect(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw DimensionMismatch("effect must be square");
  if (!is_psd(m_, tol)) throw std::invalid_argument("effect is not positive semidefinite");
  if (!loewner_leq(m_, Matrix::Identity(m_.rows(), m_.cols()), tol)) {
    throw std::invalid_argument("effect exceeds the identity");
  }
}

Measurement::Measurement(std::map<int, Matrix> ops, bool projective)
    : ops_(std::move(ops)), projective_(projective) {
  if (ops_.empty()) throw std::invalid_argument("measurement needs at least one outcome");
  const auto d = ops_.begin()->second.rows();
  for (const auto& [i, m] : ops_) {
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("measurement operators differ in shape");
  }
}

const Matrix& Measurement::op(int outcome) const {
  const auto it = ops_.find(outcome);
  if (it == ops_.end()) throw std::out_of_range("no measurement outcome " + std::to_string(outcome));
  return it->second;
}

std::vector<int> Measurement::outcomes() const {
  std::vector<int> out;
  for (const auto& [i, m] : ops_) out.push_back(i);
  return out;
}

bool Measurement::complete(double tol) const {
  Matrix g = Matrix::Zero(dim(), dim());
  for (const auto& [i, m] : ops_) g += m.adjoint() * m;
  return max_abs(g - Matrix::Identity(dim(), dim())) <= tol;
}

bool Measurement::is_projective(double tol) const {
  for (const auto& [i, mi] : ops_) {
    for (const auto& [j, mj] : ops_) {
      const Matrix expect = i == j ? mi : Matrix::Zero(dim(), dim());
      if (max_abs(mi * mj - expect) > tol) return false;
    }
  }
  return true;
}

Superoperator Measurement::branch(int outcome) const { return Superoperator({op(outcome)}); }

DensityOperator apply(const Superoperator& e, const DensityOperator& rho) {
  // The output of a CP map is PSD; only rounding can push it out, so it is
  // validated with a loose tolerance.
  return DensityOperator(e.apply(rho.matrix()), 1e-6);
}

Superoperator compose(const Superoperator& e1, const Superoperator& e2) {
  if (e1.out_dim() != e2.in_dim()) throw DimensionMismatch("compose: intermediate dimensions differ");
  std::vector<Matrix> ks;
  ks.reserve(e1.kraus().size() * e2.kraus().size());
  for (const auto& f : e2.kraus()) {
    for (const auto& k : e1.kraus()) ks.push_back(f * k);
  }
  return Superoperator(e1.in_dim(), e2.out_dim(), std::move(ks));
}

Superoperator sum(const std::vector<Superoperator>& terms) {
  if (terms.empty()) throw std::invalid_argument("sum of no superoperators has no dimension");
  std::vector<Matrix> ks;
  for (const auto& t : terms) {
    if (t.in_dim() != terms[0].in_dim() || t.out_dim() != terms[0].out_dim()) {
      throw DimensionMismatch("sum: operands have different dimensions");
    }
    ks.insert(ks.end(), t.kraus().begin(), t.kraus().end());
  }
  return Superoperator(terms[0].in_dim(), terms[0].out_dim(), std::move(ks));
}

Superoperator tensor(const Superoperator& e, const Superoperator& f) {
  std::vector<Matrix> ks;
  for (const auto& a : e.kraus()) {
    for (const auto& b : f.kraus()) ks.push_back(kron(a, b));
  }
  return Superoperator(e.in_dim() * f.in_dim(), e.out_dim() * f.out_dim(), std::move(ks));
}

Superoperator dual(const Superoperator& e) {
  std::vector<Matrix> ks;
  for (const auto& k : e.kraus()) ks.push_back(k.adjoint());
  return Superoperator(e.out_dim(), e.in_dim(), std::move(ks));
}

SuperopReport validate_superop(const Superoperator& e, double tol) {
  SuperopReport r;
  r.cp = is_psd(choi(e), tol);
  const Matrix g = e.kraus_gram();
  const Matrix id = Matrix::Identity(e.in_dim(), e.in_dim());
  r.trace_non_increasing = loewner_leq(g, id, tol);
  r.trace_preserving = max_abs(g - id) <= tol;
  return r;
}

Matrix choi(const Superoperator& e) { return choi_of_transfer(transfer_of(e), e.in_dim(), e.out_dim()); }

double choi_distance(const Superoperator& e, const Superoperator& f) {
  if (e.in_dim() != f.in_dim() || e.out_dim() != f.out_dim()) {
    throw DimensionMismatch("choi_distance: operands have different dimensions");
  }
  // The Choi matrix is an entry permutation of the transfer matrix.
  return max_abs(transfer_of(e) - transfer_of(f));
}

}  // namespace nkaq::quantum
