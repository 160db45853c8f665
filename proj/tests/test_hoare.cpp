#include <gtest/gtest.h>

#include "nkaq/hoare/pqhl.hpp"
#include "nkaq/program/random_program.hpp"
#include "nkaq/syntax/parser.hpp"

using namespace nkaq::hoare;
using nkaq::quantum::identity;
using nkaq::quantum::ket_bra;
using nkaq::quantum::max_abs;
using nkaq::quantum::Rng;
using nkaq::syntax::Expr;
using nkaq::syntax::Sort;

namespace {

std::string data(const std::string& name) { return std::string(NKAQ_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Effects, NegationAndPartialSum) {
  const Effect p0(ket_bra(2, 0, 0));
  EXPECT_LT(max_abs(negate_effect(p0).matrix() - ket_bra(2, 1, 1)), 1e-15);
  const auto s = oplus_effects(p0, Effect(ket_bra(2, 1, 1)));
  ASSERT_TRUE(s.has_value());
  EXPECT_LT(max_abs(s->matrix() - identity(2)), 1e-15);
  EXPECT_FALSE(oplus_effects(Effect(identity(2)), Effect(identity(2))).has_value());
  EXPECT_FALSE(oplus_effects(p0, p0).has_value());
  EXPECT_TRUE(oplus_effects(Effect(identity(2) / 2.0), Effect(identity(2) / 2.0)).has_value());
}

TEST(Effects, Laws) {
  Rng rng(42);
  const auto r = check_effect_laws(rng, 200, 1e-9);
  EXPECT_EQ(r.cases, 200);
  EXPECT_TRUE(r.ok());
}

TEST(Partition, CompleteAndIncomplete) {
  Rng rng(43);
  const Measurement m({{0, ket_bra(2, 0, 0)}, {1, ket_bra(2, 1, 1)}}, true);
  EXPECT_TRUE(check_partition(m, 1e-9, rng).ok());
  const Measurement half({{0, identity(2) / 2.0}});
  const auto r = check_partition(half, 1e-9, rng);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.ok());
  EXPECT_NEAR(r.gram_error, 0.75, 1e-12);
  EXPECT_LT(max_abs(dual_branch(m, 1, identity(2)) - ket_bra(2, 1, 1)), 1e-15);
}

TEST(Triple, FixtureVerdicts) {
  Rng rng(44);
  const auto skip = load_triple_file(data("skip_triple.json"));
  const auto vs = hoare_valid(skip.triple, skip.ctx, 1e-9, rng);
  EXPECT_EQ(vs.verdict, Verdict::valid);
  EXPECT_TRUE(vs.samples_agree);
  // X maps |1> to |0>: pre |1><1|, post |0><0| holds with zero slack.
  const auto flip = load_triple_file(data("flip_triple.json"));
  EXPECT_EQ(flip.partitions.size(), 1u);
  const auto vf = hoare_valid(flip.triple, flip.ctx, 1e-9, rng);
  EXPECT_EQ(vf.verdict, Verdict::marginal);
  EXPECT_TRUE(vf.valid);
  const auto bad = load_triple_file(data("bad_triple.json"));
  const auto vb = hoare_valid(bad.triple, bad.ctx, 1e-9, rng);
  EXPECT_EQ(vb.verdict, Verdict::invalid);
  EXPECT_NEAR(vb.margin, -1.0, 1e-12);
  EXPECT_THROW(load_triple_file(data("malformed.json")), std::exception);
}

TEST(Triple, LoopTriple) {
  // while |0> do X: any state ends in |1>, so {I} P {|1><1|} is valid.
  Rng rng(45);
  ProgramContext ctx;
  ctx.layout = nkaq::program::VariableLayout({{"q", 2}});
  ctx.measurements.emplace("M", Measurement({{0, ket_bra(2, 1, 1)}, {1, ket_bra(2, 0, 0)}}, true));
  const auto p = nkaq::program::parse_program("while M[q]=1 do q := X[q] done", ctx);
  const auto r = hoare_valid({identity(2), p, ket_bra(2, 1, 1)}, ctx, 1e-9, rng);
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(hoare_valid({identity(2), p, ket_bra(2, 0, 0)}, ctx, 1e-9, rng).valid);
}

TEST(Encode, TripleShape) {
  const auto flip = load_triple_file(data("flip_triple.json"));
  const auto enc = nkaq::program::EncoderSetting::automatic(flip.triple.program, flip.ctx, {{"X[q]", "x"}});
  const auto q = encode_triple(flip.triple, flip.ctx, enc);
  EXPECT_EQ(q.relation, nkaq::syntax::Relation::leq);
  EXPECT_EQ(q.lhs, Expr::prod({Expr::atom("x"), Expr::neg(Expr::atom("b", Sort::effect))}));
  EXPECT_EQ(q.rhs, Expr::neg(Expr::atom("a", Sort::effect)));
  EXPECT_EQ(effect_term(identity(2), "a"), Expr::one());
  EXPECT_EQ(effect_term(Matrix::Zero(2, 2), "a"), Expr::zero());
  EXPECT_EQ(effect_term(ket_bra(2, 0, 0), "a"), Expr::atom("a", Sort::effect));
}

TEST(Encode, DualReadingAgreesWithTheDirectCheck) {
  Rng rng(46);
  const auto flip = load_triple_file(data("flip_triple.json"));
  const auto enc = nkaq::program::EncoderSetting::automatic(flip.triple.program, flip.ctx, {{"X[q]", "x"}});
  auto s = nkaq::interp::setting_from_encoder(enc, flip.ctx);
  s.eval.emplace("a", nkaq::interp::effect_atom_superop(flip.triple.pre));
  s.eval.emplace("b", nkaq::interp::effect_atom_superop(flip.triple.post));
  const auto d = dual_effect_leq(encode_triple(flip.triple, flip.ctx, enc), s, 1e-9);
  EXPECT_TRUE(d.constant);
  EXPECT_TRUE(d.holds);
  EXPECT_NEAR(d.margin, 0.0, 1e-12);
}

TEST(Property, DualAndSampledChecksAgree) {
  Rng rng(47);
  int valid = 0;
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    nkaq::program::RandomProgramOptions opts;
    opts.qubits = 1 + i % 2;
    auto rp = nkaq::program::random_program(rng, opts);
    const int d = rp.ctx.layout.total_dim();
    HoareTriple t{nkaq::quantum::random_effect(d, rng), rp.program, nkaq::quantum::random_effect(d, rng)};
    // Every third precondition is scaled down so valid triples show up.
    if (i % 3 == 0) t.pre = t.pre * 0.05;
    try {
      const auto r = hoare_valid(t, rp.ctx, 1e-9, rng, 60);
      ++checked;
      if (r.verdict == Verdict::marginal) continue;
      ASSERT_TRUE(r.samples_agree || r.verdict == Verdict::invalid) << nkaq::program::print_program(rp.program);
      // A violating state found by sampling is always a real violation.
      if (r.worst_trace > 1e-9) ASSERT_FALSE(r.valid);
      valid += r.valid ? 1 : 0;
    } catch (const nkaq::program::NonConvergent&) {
    }
  }
  EXPECT_GT(checked, 90);
  EXPECT_GT(valid, 10);
}

TEST(Pqhl, RulesHoldOnRandomInstances) {
  Rng rng(48);
  for (PqhlRule rule : kPqhlRules) {
    int premises = 0;
    for (int i = 0; i < 20; ++i) {
      const auto inst = random_pqhl_instance(rule, rng, 1 + i % 2);
      const auto c = pqhl_rule_check(inst, 1e-8, rng);
      ASSERT_TRUE(c.ok()) << to_string(rule) << " instance " << i;
      premises += c.premises ? 1 : 0;
    }
    EXPECT_EQ(premises, 20) << to_string(rule);
    EXPECT_FALSE(corpus_script(rule).empty());
  }
  EXPECT_STREQ(to_string(PqhlRule::skip), "Ax.Sk");
}
