#pragma once

#include <vector>

#include "nkaq/exec.hpp"
#include "nkaq/quantum/linalg.hpp"

namespace nkaq::quantum {

// Sum_k K rho K^dagger.
Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho, Exec exec);

// Liouville matrix Sum_k conj(K) (x) K for column-stacking vec, so that
// vec(E(rho)) = T vec(rho) and "E1 then E2" is T2 * T1.
Matrix transfer_matrix(const std::vector<Matrix>& kraus, Exec exec);

}  // namespace nkaq::quantum
