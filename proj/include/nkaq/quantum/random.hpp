#pragma once

#include <random>

#include "nkaq/quantum/superop.hpp"

namespace nkaq::quantum {

using Rng = std::mt19937_64;

Matrix random_gaussian(int rows, int cols, Rng& rng);
// Haar-distributed, via QR of a complex Gaussian matrix with phase fix.
Matrix random_unitary(int d, Rng& rng);
Matrix random_psd(int d, Rng& rng);
// Unit-trace density matrix.
Matrix random_density(int d, Rng& rng);
// Random basis with eigenvalues uniform in [0, 1].
Matrix random_effect(int d, Rng& rng);
// Trace-preserving map with the given number of Kraus operators.
Superoperator random_channel(int in_dim, int out_dim, int n_kraus, Rng& rng);
// Channel precomposed with the filter sqrt(A) for a random effect A, so
// Sum K^dagger K = A: trace-non-increasing and typically strictly so.
Superoperator random_superop(int d, int n_kraus, Rng& rng);
// Projective measurement splitting a random (or the computational) basis
// into the given number of nonempty blocks.
Measurement random_projective_measurement(int d, int outcomes, Rng& rng, bool computational = false);

}  // namespace nkaq::quantum
