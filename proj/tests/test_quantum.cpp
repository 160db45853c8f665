#include <gtest/gtest.h>

#include "nkaq/quantum/json_io.hpp"
#include "nkaq/quantum/kernels.hpp"
#include "nkaq/quantum/random.hpp"
#include "nkaq/quantum/transfer.hpp"

using namespace nkaq::quantum;

namespace {

Matrix ket0() { return ket_bra(2, 0, 0); }
Matrix ket1() { return ket_bra(2, 1, 1); }

Matrix pauli_x() {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

Matrix vec(const Matrix& m) { return m.reshaped(m.size(), 1); }

}  // namespace

TEST(Superop, ApplyExamples) {
  const auto x = Superoperator::unitary(pauli_x());
  EXPECT_LT(max_abs(x.apply(ket0()) - ket1()), 1e-15);
  const auto h = Superoperator::unitary(hadamard());
  EXPECT_LT(max_abs(h.apply(ket0()) - Matrix::Constant(2, 2, 0.5)), 1e-15);
  const auto dec = Superoperator({ket0(), ket1()});
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  EXPECT_LT(max_abs(dec.apply(plus) - identity(2) / 2.0), 1e-15);
  EXPECT_LT(max_abs(Superoperator::zero(2).apply(plus)), 1e-15);
  const DensityOperator out = apply(x, DensityOperator(ket0()));
  EXPECT_LT(max_abs(out.matrix() - ket1()), 1e-15);
}

TEST(Superop, ComposeOrder) {
  // X then projection onto |1> keeps |0>'s image; the opposite order kills it.
  const auto x = Superoperator::unitary(pauli_x());
  const auto p1 = Superoperator({ket1()});
  EXPECT_NEAR(compose(x, p1).apply(ket0()).trace().real(), 1.0, 1e-15);
  EXPECT_NEAR(compose(p1, x).apply(ket0()).trace().real(), 0.0, 1e-15);
}

TEST(Superop, SumAndTensor) {
  const auto p0 = Superoperator({ket0()});
  const auto p1 = Superoperator({ket1()});
  const auto s = sum({p0, p1});
  EXPECT_EQ(s.kraus().size(), 2u);
  EXPECT_TRUE(validate_superop(s).trace_preserving);
  const auto t = tensor(Superoperator::unitary(pauli_x()), Superoperator::identity(2));
  EXPECT_EQ(t.in_dim(), 4);
  const Matrix in = kron(ket0(), ket1());
  EXPECT_LT(max_abs(t.apply(in) - kron(ket1(), ket1())), 1e-15);
}

TEST(Superop, Validation) {
  const auto r = validate_superop(Superoperator({ket0()}));
  EXPECT_TRUE(r.cp);
  EXPECT_TRUE(r.trace_non_increasing);
  EXPECT_FALSE(r.trace_preserving);
  const auto big = validate_superop(Superoperator({2.0 * identity(2)}));
  EXPECT_FALSE(big.trace_non_increasing);
  EXPECT_THROW(DensityOperator(2.0 * ket0()), std::invalid_argument);
  EXPECT_THROW(Effect(-ket0()), std::invalid_argument);
  EXPECT_NO_THROW(Effect(identity(2) / 3.0));
}

TEST(Linalg, Loewner) {
  EXPECT_TRUE(loewner_leq(ket0(), identity(2)));
  EXPECT_FALSE(loewner_leq(identity(2), ket0()));
  EXPECT_TRUE(loewner_leq(Matrix::Zero(2, 2), ket1()));
  Matrix nonherm = Matrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  EXPECT_THROW(loewner_leq(nonherm, identity(2)), std::invalid_argument);
  EXPECT_NEAR(min_eigenvalue(ket0() - ket1()), -1.0, 1e-14);
}

TEST(Measurement, CompleteAndBranches) {
  const Measurement m({{0, ket0()}, {1, ket1()}}, true);
  EXPECT_TRUE(m.complete());
  EXPECT_TRUE(m.is_projective());
  EXPECT_EQ(m.outcomes(), (std::vector<int>{0, 1}));
  EXPECT_LT(max_abs(m.branch(1).apply(Matrix::Constant(2, 2, 0.5)) - ket1() / 2.0), 1e-15);
  const Measurement half({{0, ket0()}}, false);
  EXPECT_FALSE(half.complete());
}

TEST(Property, DualityOnRandomTriples) {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 3;
    const auto e = random_superop(d, 1 + i % 3, rng);
    const Matrix rho = random_density(d, rng);
    const Matrix a = random_effect(d, rng);
    const Complex lhs = (a * e.apply(rho)).trace();
    const Complex rhs = (dual(e).apply(a) * rho).trace();
    ASSERT_LT(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(Property, LinearityAndAssociativity) {
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    const int d = 2 + i % 2;
    const auto e = random_superop(d, 2, rng);
    const auto f = random_superop(d, 2, rng);
    const auto g = random_superop(d, 1, rng);
    const Matrix r1 = random_density(d, rng);
    const Matrix r2 = random_density(d, rng);
    ASSERT_LT(max_abs(e.apply(0.3 * r1 + 0.7 * r2) - 0.3 * e.apply(r1) - 0.7 * e.apply(r2)), 1e-13);
    ASSERT_LT(choi_distance(compose(compose(e, f), g), compose(e, compose(f, g))), 1e-13);
    ASSERT_LT(max_abs(sum({e, f}).apply(r1) - e.apply(r1) - f.apply(r1)), 1e-13);
    ASSERT_TRUE(validate_superop(compose(e, f)).trace_non_increasing);
  }
}

TEST(Kernels, SerialAndParallelAgree) {
  Rng rng(44);
  for (int d : {2, 4, 8}) {
    const auto e = random_superop(d, 3, rng);
    const Matrix rho = random_density(d, rng);
    EXPECT_LT(max_abs(apply_kraus(e.kraus(), rho, nkaq::Exec::serial) -
                      apply_kraus(e.kraus(), rho, nkaq::Exec::parallel)),
              1e-14);
    EXPECT_LT(max_abs(transfer_matrix(e.kraus(), nkaq::Exec::serial) -
                      transfer_matrix(e.kraus(), nkaq::Exec::parallel)),
              1e-14);
  }
}

TEST(Transfer, VecConventionAndOrder) {
  Rng rng(45);
  const auto e1 = random_superop(3, 2, rng);
  const auto e2 = random_superop(3, 2, rng);
  const Matrix rho = random_density(3, rng);
  EXPECT_LT(max_abs(transfer_of(e1) * vec(rho) - vec(e1.apply(rho))), 1e-13);
  EXPECT_LT(max_abs(transfer_of(compose(e1, e2)) - transfer_of(e2) * transfer_of(e1)), 1e-13);
  const Matrix t = transfer_of(e1);
  EXPECT_LT(choi_distance(superop_of_transfer(t, 3, 3), e1), 1e-12);
  EXPECT_LT(max_abs(choi_of_transfer(t, 3, 3) - choi(e1)), 1e-13);
}

TEST(Transfer, GeometricSeries) {
  // Sum_n (S/2)^n for S = identity on a 1x1 block is 2.
  Matrix s = Matrix::Identity(1, 1) * 0.5;
  const auto r = geometric_series(s, Matrix::Identity(1, 1), Side::left, {});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value(0, 0).real(), 2.0, 1e-11);
  const auto div = geometric_series(Matrix::Identity(1, 1), Matrix::Identity(1, 1), Side::left, {});
  EXPECT_FALSE(div.converged);
  // Nilpotent step: the sum is exact after two terms.
  Matrix n = Matrix::Zero(2, 2);
  n(1, 0) = 1.0;
  const auto nil = geometric_series(n, Matrix::Identity(2, 2), Side::right, {});
  EXPECT_TRUE(nil.converged);
  EXPECT_LT(max_abs(nil.value - (Matrix::Identity(2, 2) + n)), 1e-15);
}

TEST(Transfer, SparseMatchesDense) {
  Rng rng(46);
  for (int d : {2, 3}) {
    const auto e = random_superop(d, 2, rng);
    const auto scaled = Superoperator(d, d, {e.kraus()[0] * 0.8, e.kraus()[1] * 0.8});
    const Matrix t = transfer_of(scaled);
    const auto dense = geometric_series(t, Matrix::Identity(d * d, d * d), Side::left, {});
    const SparseMatrix ts = sparse_transfer_of(scaled.kraus());
    const auto sparse = geometric_series(ts, sparse_identity(d * d), Side::left, {});
    ASSERT_TRUE(dense.converged);
    ASSERT_TRUE(sparse.converged);
    EXPECT_LT(max_abs(Matrix(sparse.value) - dense.value), 1e-9);
    EXPECT_LT(max_abs(Matrix(ts) - t), 1e-15);
  }
}

TEST(Json, RoundTrip) {
  Rng rng(47);
  const auto e = random_superop(2, 2, rng);
  const auto back = superop_from_json(superop_to_json(e));
  EXPECT_LT(choi_distance(e, back), 1e-15);
  const Matrix m = random_gaussian(2, 3, rng);
  EXPECT_LT(max_abs(matrix_from_json(matrix_to_json(m)) - m), 1e-15);
  const auto meas = random_projective_measurement(3, 2, rng);
  const auto mb = measurement_from_json(measurement_to_json(meas));
  EXPECT_TRUE(mb.projective());
  EXPECT_LT(max_abs(mb.op(1) - meas.op(1)), 1e-15);
  EXPECT_LT(max_abs(matrix_from_json(Json::parse(R"({"dim":2,"entries":[1,0,0,[0,1]]})")) -
                    Matrix{{1.0, 0.0}, {0.0, Complex(0, 1)}}),
            1e-15);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim":2,"entries":[1,0,0]})")), FormatError);
}

TEST(Random, GeneratorsHaveTheAdvertisedShape) {
  Rng rng(48);
  for (int i = 0; i < 20; ++i) {
    const Matrix u = random_unitary(4, rng);
    ASSERT_LT(max_abs(u.adjoint() * u - identity(4)), 1e-12);
    ASSERT_TRUE(validate_superop(random_channel(3, 2, 2, rng)).trace_preserving);
    ASSERT_TRUE(validate_superop(random_superop(3, 2, rng)).trace_non_increasing);
    const auto m = random_projective_measurement(4, 3, rng);
    ASSERT_TRUE(m.complete(1e-12));
    ASSERT_TRUE(m.is_projective(1e-12));
    for (int k : m.outcomes()) ASSERT_GT(m.op(k).trace().real(), 0.5);
  }
}
