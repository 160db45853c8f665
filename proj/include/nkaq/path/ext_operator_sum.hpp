#pragma once

#include <vector>

#include "nkaq/quantum/json_io.hpp"
#include "nkaq/quantum/superop.hpp"
#include "nkaq/series/extnat.hpp"

namespace nkaq::path {

using quantum::Matrix;
using series::ExtNat;

struct Term {
  ExtNat weight;
  Matrix op;
};

// Finite presentation of a multiset of PSD operators in which each operator
// occurs with an extended-natural multiplicity.
class ExtOperatorSum {
 public:
  explicit ExtOperatorSum(int dim) : dim_(dim) {}
  // Validates each op as PSD within tol; zero-weight terms are dropped.
  ExtOperatorSum(int dim, std::vector<Term> terms, double tol = quantum::kDefaultTol);

  static ExtOperatorSum single(const Matrix& op, ExtNat weight = 1);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  // Weighted sum of the finitely weighted terms.
  Matrix finite_part() const;
  // Plain sum of the INF-weighted terms; only its support matters.
  Matrix infinite_part() const;

  // Multiset union.
  ExtOperatorSum concat(const ExtOperatorSum& other) const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

// A below B: the INF part of A is supported inside the INF part of B, and
// on the kernel K of B's INF part, P_K (F_A - F_B) P_K is below tol * I.
bool po_leq(const ExtOperatorSum& a, const ExtOperatorSum& b, double tol = quantum::kDefaultTol);
bool po_equiv(const ExtOperatorSum& a, const ExtOperatorSum& b, double tol = quantum::kDefaultTol);

// Termwise application with weights kept.
ExtOperatorSum lift_apply(const quantum::Superoperator& e, const ExtOperatorSum& a);

// {"terms": [{"weight": n | "INF", "op": matrix}, ...]}; an optional "dim"
// is required only when the term list is empty.
quantum::Json ext_sum_to_json(const ExtOperatorSum& a);
ExtOperatorSum ext_sum_from_json(const quantum::Json& j);

}  // namespace nkaq::path
