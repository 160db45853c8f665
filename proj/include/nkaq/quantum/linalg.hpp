#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nkaq::quantum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// (A + A^dagger) / 2
Matrix hermitize(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol);
double max_abs(const Matrix& a);
// Smallest eigenvalue of the hermitized matrix.
double min_eigenvalue(const Matrix& a);
// Largest eigenvalue of the hermitized matrix.
double max_eigenvalue(const Matrix& a);

// A is below B in the Loewner order: min eigenvalue of B - A >= -tol.
// Throws std::invalid_argument when either input is not Hermitian within tol.
bool loewner_leq(const Matrix& a, const Matrix& b, double tol = kDefaultTol);
bool is_psd(const Matrix& a, double tol = kDefaultTol);

// Orthogonal projector onto the span of eigenvectors of the hermitized
// matrix with eigenvalue below the threshold (numerical kernel for PSD input).
Matrix kernel_projector(const Matrix& a, double threshold);

Matrix kron(const Matrix& a, const Matrix& b);
// |i><j| in dimension d.
Matrix ket_bra(int d, int i, int j);
Matrix identity(int d);

}  // namespace nkaq::quantum
