#pragma once

#include <map>
#include <vector>

#include "nkaq/quantum/linalg.hpp"

namespace nkaq::quantum {

// Kraus-form map from in_dim x in_dim to out_dim x out_dim matrices.
// An empty Kraus list is normalised to a single zero operator.
class Superoperator {
 public:
  Superoperator(int in_dim, int out_dim, std::vector<Matrix> kraus);
  explicit Superoperator(std::vector<Matrix> kraus);  // dims read off the first operator

  static Superoperator identity(int d);
  static Superoperator zero(int in_dim, int out_dim);
  static Superoperator zero(int d) { return zero(d, d); }
  static Superoperator unitary(const Matrix& u);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  // Sum_k K rho K^dagger on a raw matrix (no validation).
  Matrix apply(const Matrix& rho) const;
  // Sum_k K^dagger K
  Matrix kraus_gram() const;

 private:
  int in_dim_;
  int out_dim_;
  std::vector<Matrix> kraus_;
};

// Partial density operator: Hermitian, PSD and trace <= 1, all within tol.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m, double tol = kDefaultTol);
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

// Quantum predicate 0 <= A <= I.
class Effect {
 public:
  explicit Effect(Matrix m, double tol = kDefaultTol);
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

class Measurement {
 public:
  Measurement(std::map<int, Matrix> ops, bool projective = false);

  const std::map<int, Matrix>& ops() const { return ops_; }
  const Matrix& op(int outcome) const;
  bool projective() const { return projective_; }
  int dim() const { return static_cast<int>(ops_.begin()->second.cols()); }
  std::vector<int> outcomes() const;

  // Sum_i M_i^dagger M_i = I within tol.
  bool complete(double tol = kDefaultTol) const;
  // M_i M_j = delta_ij M_i within tol.
  bool is_projective(double tol = kDefaultTol) const;
  // Kraus map rho -> M_i rho M_i^dagger.
  Superoperator branch(int outcome) const;

 private:
  std::map<int, Matrix> ops_;
  bool projective_;
};

DensityOperator apply(const Superoperator& e, const DensityOperator& rho);

// e1 then e2: Kraus products F_j E_i.
Superoperator compose(const Superoperator& e1, const Superoperator& e2);
// Concatenated Kraus lists.
Superoperator sum(const std::vector<Superoperator>& terms);
Superoperator tensor(const Superoperator& e, const Superoperator& f);
// Kraus adjoints: the Heisenberg-picture map.
Superoperator dual(const Superoperator& e);

struct SuperopReport {
  bool cp = false;
  bool trace_non_increasing = false;
  bool trace_preserving = false;
};
SuperopReport validate_superop(const Superoperator& e, double tol = kDefaultTol);

// J = Sum_ij |i><j| (x) E(|i><j|), dimension in_dim * out_dim.
Matrix choi(const Superoperator& e);
// Max-abs entry difference of the Choi matrices.
double choi_distance(const Superoperator& e, const Superoperator& f);

}  // namespace nkaq::quantum
