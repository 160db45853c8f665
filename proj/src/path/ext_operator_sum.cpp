#include "nkaq/path/ext_operator_sum.hpp"

namespace nkaq::path {

using quantum::DimensionMismatch;

ExtOperatorSum::ExtOperatorSum(int dim, std::vector<Term> terms, double tol) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("operator sum dimension must be positive");
  for (auto& t : terms) {
    if (t.op.rows() != dim || t.op.cols() != dim) throw DimensionMismatch("operator sum term has wrong dimension");
    if (!quantum::is_psd(t.op, tol)) throw std::invalid_argument("operator sum term is not PSD");
    if (!t.weight.is_zero()) terms_.push_back(std::move(t));
  }
}

ExtOperatorSum ExtOperatorSum::single(const Matrix& op, ExtNat weight) {
  return ExtOperatorSum(static_cast<int>(op.rows()), {Term{weight, op}});
}

Matrix ExtOperatorSum::finite_part() const {
  Matrix f = Matrix::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    if (!t.weight.is_infinite()) f += static_cast<double>(t.weight.value()) * t.op;
  }
  return f;
}

Matrix ExtOperatorSum::infinite_part() const {
  Matrix g = Matrix::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    if (t.weight.is_infinite()) g += t.op;
  }
  return g;
}

ExtOperatorSum ExtOperatorSum::concat(const ExtOperatorSum& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("concat: operator sums differ in dimension");
  ExtOperatorSum out(dim_);
  out.terms_ = terms_;
  out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
  return out;
}

bool po_leq(const ExtOperatorSum& a, const ExtOperatorSum& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatch("po_leq: operator sums differ in dimension");
  const Matrix p = quantum::kernel_projector(b.infinite_part(), tol);
  if (quantum::max_eigenvalue(p * a.infinite_part() * p) > tol) return false;
  return quantum::max_eigenvalue(p * (a.finite_part() - b.finite_part()) * p) <= tol;
}

bool po_equiv(const ExtOperatorSum& a, const ExtOperatorSum& b, double tol) {
  return po_leq(a, b, tol) && po_leq(b, a, tol);
}

ExtOperatorSum lift_apply(const quantum::Superoperator& e, const ExtOperatorSum& a) {
  if (e.in_dim() != a.dim()) throw DimensionMismatch("lift_apply: superoperator input dimension differs");
  std::vector<Term> out;
  for (const auto& t : a.terms()) out.push_back({t.weight, quantum::hermitize(e.apply(t.op))});
  // Images of PSD operators under CP maps are PSD up to rounding.
  return ExtOperatorSum(e.out_dim(), std::move(out), 1e-6);
}

quantum::Json ext_sum_to_json(const ExtOperatorSum& a) {
  quantum::Json terms = quantum::Json::array();
  for (const auto& t : a.terms()) {
    quantum::Json w = t.weight.is_infinite() ? quantum::Json("INF") : quantum::Json(t.weight.value());
    terms.push_back({{"weight", w}, {"op", quantum::matrix_to_json(t.op)}});
  }
  return {{"dim", a.dim()}, {"terms", terms}};
}

ExtOperatorSum ext_sum_from_json(const quantum::Json& j) {
  if (!j.contains("terms") || !j.at("terms").is_array()) throw quantum::FormatError("operator sum needs \"terms\"");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    const auto& w = t.at("weight");
    const ExtNat weight = w.is_string() ? ExtNat::parse(w.get<std::string>()) : ExtNat(w.get<std::uint64_t>());
    terms.push_back({weight, quantum::matrix_from_json(t.at("op"))});
  }
  int dim = j.value("dim", 0);
  if (dim == 0) {
    if (terms.empty()) throw quantum::FormatError("empty operator sum needs \"dim\"");
    dim = static_cast<int>(terms.front().op.rows());
  }
  return ExtOperatorSum(dim, std::move(terms));
}

}  // namespace nkaq::path
