#include "nkaq/quantum/kernels.hpp"

#include <omp.h>

namespace nkaq::quantum {

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho, Exec exec) {
  const auto rows = kraus.front().rows();
  if (exec == Exec::serial || kraus.size() == 1) {
    Matrix out = Matrix::Zero(rows, rows);
    for (const auto& k : kraus) out.noalias() += k * rho * k.adjoint();
    return out;
  }
  // Per-thread partial sums, reduced in thread order so the result does not
  // depend on scheduling.
  const int threads = omp_get_max_threads();
  std::vector<Matrix> partial(threads, Matrix::Zero(rows, rows));
  const auto n = static_cast<std::int64_t>(kraus.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& k = kraus[i];
    partial[omp_get_thread_num()].noalias() += k * rho * k.adjoint();
  }
  Matrix out = Matrix::Zero(rows, rows);
  for (const auto& p : partial) out += p;
  return out;
}

Matrix transfer_matrix(const std::vector<Matrix>& kraus, Exec exec) {
  const auto dout = kraus.front().rows();
  const auto din = kraus.front().cols();
  Matrix t = Matrix::Zero(dout * dout, din * din);
  if (exec == Exec::serial) {
    for (const auto& k : kraus) t += kron(k.conjugate(), k);
    return t;
  }
  // Entry (r + dout*l, i + din*j) is Sum_K conj(K(l, j)) K(r, i); each
  // output block row l is owned by one thread.
#pragma omp parallel for schedule(static)
  for (std::int64_t l = 0; l < static_cast<std::int64_t>(dout); ++l) {
    for (const auto& k : kraus) {
      for (Eigen::Index j = 0; j < din; ++j) {
        const Complex c = std::conj(k(l, j));
        if (c == Complex(0.0)) continue;
        t.block(l * dout, j * din, dout, din) += c * k;
      }
    }
  }
  return t;
}

}  // namespace nkaq::quantum
