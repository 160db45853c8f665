#include "nkaq/quantum/random.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace nkaq::quantum {

Matrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

Matrix random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(d, d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    const double a = std::abs(diag);
    if (a > 0) q.col(i) *= diag / a;
  }
  return q;
}

Matrix random_psd(int d, Rng& rng) {
  const Matrix g = random_gaussian(d, d, rng);
  return hermitize(g * g.adjoint());
}

Matrix random_density(int d, Rng& rng) {
  const Matrix p = random_psd(d, rng);
  return p / p.trace().real();
}

Matrix random_effect(int d, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Matrix v = random_unitary(d, rng);
  Eigen::VectorXd lam(d);
  for (int i = 0; i < d; ++i) lam[i] = u(rng);
  return hermitize(v * lam.cast<Complex>().asDiagonal() * v.adjoint());
}

Superoperator random_channel(int in_dim, int out_dim, int n_kraus, Rng& rng) {
  // Stack the Kraus operators into an isometry in_dim -> n_kraus*out_dim.
  const Matrix g = random_gaussian(n_kraus * out_dim, in_dim, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(g.adjoint() * g));
  const Matrix inv_sqrt = es.operatorInverseSqrt();
  const Matrix v = g * inv_sqrt;
  std::vector<Matrix> ks;
  for (int k = 0; k < n_kraus; ++k) ks.push_back(v.block(k * out_dim, 0, out_dim, in_dim));
  return Superoperator(in_dim, out_dim, std::move(ks));
}

Superoperator random_superop(int d, int n_kraus, Rng& rng) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(random_effect(d, rng));
  const Matrix filter = es.operatorSqrt();
  std::vector<Matrix> ks;
  const Superoperator channel = random_channel(d, d, n_kraus, rng);
  for (const auto& k : channel.kraus()) ks.push_back(k * filter);
  return Superoperator(d, d, std::move(ks));
}

Measurement random_projective_measurement(int d, int outcomes, Rng& rng, bool computational) {
  if (outcomes < 1 || outcomes > d) throw std::invalid_argument("outcome count must be in [1, d]");
  const Matrix basis = computational ? Matrix::Identity(d, d) : random_unitary(d, rng);
  std::vector<int> owner(d);
  std::iota(owner.begin(), owner.end(), 0);
  std::shuffle(owner.begin(), owner.end(), rng);
  // First `outcomes` shuffled vectors seed one block each; the rest land randomly.
  std::vector<int> block(d);
  std::uniform_int_distribution<int> pick(0, outcomes - 1);
  for (int i = 0; i < d; ++i) block[owner[i]] = i < outcomes ? i : pick(rng);
  std::map<int, Matrix> ops;
  for (int k = 0; k < outcomes; ++k) ops[k] = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) ops[block[i]] += basis.col(i) * basis.col(i).adjoint();
  return Measurement(std::move(ops), true);
}

}  // namespace nkaq::quantum
