#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "nkaq/quantum/superop.hpp"

namespace nkaq::quantum {

Matrix transfer_of(const Superoperator& e);
Matrix choi_of_transfer(const Matrix& t, int in_dim, int out_dim);
// Kraus recovery through the eigendecomposition of the Choi matrix;
// eigenvalues below floor * (1 + largest) are dropped.
Superoperator superop_of_transfer(const Matrix& t, int in_dim, int out_dim, double floor = 1e-14);

struct StarPolicy {
  double tol = 1e-12;
  std::size_t max_terms = std::size_t{1} << 20;
  double blowup = 1e12;  // partial sums beyond this are reported as divergent
};

struct StarSum {
  Matrix value;
  bool converged = false;
  std::size_t terms = 0;
};

enum class Side { left, right };

// Sum_{n>=0} X S^n (Side::left: X multiplies from the left) or
// Sum_{n>=0} S^n X (Side::right), by block doubling. A block of terms
// whose max-abs entry falls below tol ends the sum; an exactly zero block is
// an exact certificate.
StarSum geometric_series(const Matrix& s, const Matrix& x, Side side, const StarPolicy& policy);

// Sparse twins, for layouts where the dense d^2 x d^2 transfer does not fit.
// Entries below prune_below are dropped after every product.
using SparseMatrix = Eigen::SparseMatrix<Complex>;
inline constexpr double kSparsePrune = 1e-15;

SparseMatrix sparse_transfer_of(const std::vector<Matrix>& kraus);
SparseMatrix sparse_identity(int n);

struct SparseStarSum {
  SparseMatrix value;
  bool converged = false;
  std::size_t terms = 0;
};

SparseStarSum geometric_series(const SparseMatrix& s, const SparseMatrix& x, Side side,
                               const StarPolicy& policy, double prune_below = kSparsePrune);

double max_abs(const SparseMatrix& a);

}  // namespace nkaq::quantum
