#include <gtest/gtest.h>

#include "nkaq/program/container.hpp"
#include "nkaq/program/denote.hpp"
#include "nkaq/program/encode.hpp"
#include "nkaq/program/random_program.hpp"
#include "nkaq/quantum/random.hpp"
#include "nkaq/syntax/parser.hpp"

using namespace nkaq::program;
using nkaq::quantum::ket_bra;
using nkaq::quantum::max_abs;
using nkaq::quantum::Rng;

namespace {

ProgramContext qubit_ctx() {
  ProgramContext ctx;
  ctx.layout = VariableLayout({{"q", 2}});
  ctx.measurements.emplace("M", Measurement({{0, ket_bra(2, 1, 1)}, {1, ket_bra(2, 0, 0)}}, true));
  return ctx;
}

// Partial sums of the loop semantics written out directly: the state still
// inside the loop is pushed through branch 1 and the body, and branch 0 is
// accumulated as output.
Matrix loop_oracle(const Superoperator& exit, const Superoperator& cont, const Superoperator& body,
                   const Matrix& rho, int rounds) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  Matrix live = rho;
  for (int n = 0; n < rounds; ++n) {
    out += exit.apply(live);
    live = body.apply(cont.apply(live));
  }
  return out;
}

}  // namespace

TEST(Parse, StatementForms) {
  const auto ctx = qubit_ctx();
  const Program p = parse_program("q := |0>; q := X[q]; while M[q]=1 do q := X[q] done", ctx);
  EXPECT_EQ(p.while_count(), 1u);
  const Program c = parse_program("case M[q] { 0 -> skip; 1 -> q := H[q] } end", ctx);
  ASSERT_TRUE(c.is(StmtKind::case_));
  EXPECT_EQ(c.branches().size(), 2u);
  const Program i = parse_program("if M[q]=1 then (q := X[q]; q := Z[q]) else abort", ctx);
  EXPECT_TRUE(i.is(StmtKind::case_));
  EXPECT_EQ(parse_program(print_program(p), ctx).while_count(), 1u);
}

TEST(Parse, TypecheckErrors) {
  const auto ctx = qubit_ctx();
  EXPECT_THROW(parse_program("r := X[r]", ctx), ProgramError);
  EXPECT_THROW(parse_program("q := Undefined[q]", ctx), ProgramError);
  EXPECT_THROW(parse_program("q := |2>", ctx), ProgramError);
  auto bad = ctx;
  bad.unitaries.emplace("N", ket_bra(2, 0, 0));
  EXPECT_THROW(parse_program("q := N[q]", bad), ProgramError);
  EXPECT_THROW(parse_program_untyped("q := X[q"), std::exception);
}

TEST(Denote, SkipAndAbort) {
  const auto ctx = qubit_ctx();
  Rng rng(42);
  const Matrix rho = nkaq::quantum::random_density(2, rng);
  EXPECT_LT(max_abs(denote(Program::skip(), ctx).apply(rho) - rho), 1e-14);
  EXPECT_LT(max_abs(denote(Program::abort(), ctx).apply(rho)), 1e-14);
  EXPECT_LT(max_abs(denote(Program::seq(Program::skip(), Program::init("q", 1)), ctx).apply(rho) -
                    ket_bra(2, 1, 1)),
            1e-14);
}

TEST(Denote, FlipLoopTerminatesInOne) {
  // Loop while the qubit is |0>, flipping it: every input ends in |1>.
  const auto ctx = qubit_ctx();
  const Program p = parse_program("while M[q]=1 do q := X[q] done", ctx);
  const auto e = denote(p, ctx);
  EXPECT_LT(max_abs(e.apply(ket_bra(2, 0, 0)) - ket_bra(2, 1, 1)), 1e-14);
  EXPECT_LT(max_abs(e.apply(ket_bra(2, 1, 1)) - ket_bra(2, 1, 1)), 1e-14);
  EXPECT_TRUE(validate_superop(e).trace_preserving);
  const auto d = denote_transfer(p, ctx);
  EXPECT_TRUE(d.converged);
}

TEST(Denote, LoopMatchesPartialSumOracle) {
  Rng rng(43);
  ProgramContext ctx;
  ctx.layout = VariableLayout({{"q", 2}});
  ctx.measurements.emplace("M", nkaq::quantum::random_projective_measurement(2, 2, rng));
  ctx.unitaries.emplace("U", nkaq::quantum::random_unitary(2, rng));
  const Program p = parse_program("while M[q]=1 do q := U[q] done", ctx);
  const auto e = denote(p, ctx);
  const auto& m = ctx.measurements.at("M");
  const Superoperator body = Superoperator::unitary(ctx.unitaries.at("U"));
  for (int i = 0; i < 10; ++i) {
    const Matrix rho = nkaq::quantum::random_density(2, rng);
    ASSERT_LT(max_abs(e.apply(rho) - loop_oracle(m.branch(0), m.branch(1), body, rho, 4000)), 1e-9);
  }
}

TEST(Property, SeqWithSkipAndCaseTracePreserving) {
  Rng rng(44);
  for (int i = 0; i < 30; ++i) {
    RandomProgramOptions opts;
    opts.qubits = 1 + i % 2;
    opts.abort_weight = 0.0;
    auto rp = random_program(rng, opts);
    if (rp.program.has_while()) continue;
    const auto e = denote(rp.program, rp.ctx);
    ASSERT_LT(choi_distance(e, denote(Program::seq(Program::skip(), rp.program), rp.ctx)), 1e-12);
    ASSERT_LT(choi_distance(e, denote(Program::seq(rp.program, Program::skip()), rp.ctx)), 1e-12);
    ASSERT_TRUE(validate_superop(e, 1e-9).trace_preserving) << print_program(rp.program);
  }
}

TEST(Property, DenseAndSparseAgree) {
  Rng rng(45);
  for (int i = 0; i < 20; ++i) {
    RandomProgramOptions opts;
    opts.qubits = 1 + i % 2;
    auto rp = random_program(rng, opts);
    const auto dense = denote_transfer(rp.program, rp.ctx);
    const auto sparse = denote_sparse(rp.program, rp.ctx);
    ASSERT_EQ(dense.converged, sparse.converged);
    if (dense.converged) ASSERT_LT(max_abs(Matrix(sparse.transfer) - dense.transfer), 1e-9);
  }
}

TEST(Denote, NonConvergentWithTinyBudget) {
  Rng rng(46);
  ProgramContext ctx;
  ctx.layout = VariableLayout({{"q", 2}});
  ctx.measurements.emplace("M", nkaq::quantum::random_projective_measurement(2, 2, rng));
  ctx.unitaries.emplace("U", nkaq::quantum::random_unitary(2, rng));
  const Program p = parse_program("while M[q]=1 do q := U[q] done", ctx);
  nkaq::quantum::StarPolicy tiny;
  tiny.max_terms = 2;
  EXPECT_FALSE(denote_transfer(p, ctx, tiny).converged);
  EXPECT_THROW(denote(p, ctx, tiny), NonConvergent);
}

TEST(Layout, EmbedOrder) {
  const VariableLayout l({{"a", 2}, {"b", 3}});
  EXPECT_EQ(l.total_dim(), 6);
  const Matrix x = ket_bra(2, 1, 0);
  const Matrix e = l.embed(x, {"a"});
  EXPECT_LT(max_abs(e - nkaq::quantum::kron(x, nkaq::quantum::identity(3))), 1e-15);
  const Matrix y = ket_bra(3, 2, 0);
  EXPECT_LT(max_abs(l.embed(y, {"b"}) - nkaq::quantum::kron(nkaq::quantum::identity(2), y)), 1e-15);
  EXPECT_LT(max_abs(l.embed(nkaq::quantum::kron(y, x), {"b", "a"}) - nkaq::quantum::kron(x, y)), 1e-15);
  EXPECT_THROW(l.index_of("c"), std::out_of_range);
}

TEST(Encode, Examples) {
  const auto ctx = qubit_ctx();
  const Program p = parse_program("q := |0>; while M[q]=1 do q := X[q] done", ctx);
  const auto enc = EncoderSetting::automatic(p, ctx, {{"M[q]#1", "m1"}, {"M[q]#0", "m0"}, {"X[q]", "x"}});
  const auto parsed = nkaq::syntax::parse_expr("init_q_0 (m1 x)* m0", nkaq::syntax::Alphabet::open());
  EXPECT_EQ(encode(p, enc), parsed) << nkaq::syntax::print_expr(encode(p, enc));
  EXPECT_EQ(encode(Program::skip(), enc), nkaq::syntax::Expr::one());
  EXPECT_EQ(encode(Program::abort(), enc), nkaq::syntax::Expr::zero());
  const Program c = parse_program("if M[q]=1 then q := X[q]", ctx);
  EXPECT_EQ(nkaq::syntax::print_expr(encode(c, enc)), "m0 1 + m1 x");
  EXPECT_THROW(enc.symbol("H[q]"), MissingEncoderEntry);
  EXPECT_EQ(*enc.key_of("x"), "X[q]");
}

TEST(Container, LoadsProgramFiles) {
  const auto c = load_program_file(std::string(NKAQ_TEST_DATA) + "/loop_program.json");
  EXPECT_EQ(c.program.while_count(), 1u);
  EXPECT_FALSE(c.symbols.empty());
  EXPECT_THROW(load_program_file(std::string(NKAQ_TEST_DATA) + "/malformed.json"), std::exception);
}
