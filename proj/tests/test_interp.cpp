#include <gtest/gtest.h>

#include "nkaq/interp/completeness.hpp"
#include "nkaq/interp/interpret.hpp"
#include "nkaq/program/random_program.hpp"
#include "nkaq/quantum/random.hpp"
#include "nkaq/syntax/parser.hpp"

using namespace nkaq::interp;
using nkaq::quantum::max_abs;
using nkaq::quantum::Rng;

namespace {

Expr P(const std::string& s) { return nkaq::syntax::parse_expr(s, nkaq::syntax::Alphabet::open()); }

InterpretationSetting two_maps(Rng& rng) {
  InterpretationSetting s;
  s.dim = 2;
  s.eval.emplace("a", nkaq::quantum::random_superop(2, 2, rng));
  s.eval.emplace("b", nkaq::quantum::random_superop(2, 1, rng));
  return s;
}

}  // namespace

TEST(Interpret, Constants) {
  Rng rng(42);
  const auto s = two_maps(rng);
  EXPECT_LT(max_abs(interpret(P("1"), s).transfer - Matrix::Identity(4, 4)), 1e-15);
  EXPECT_LT(max_abs(interpret(P("0"), s).transfer), 1e-15);
  const auto div = interpret(P("(1 + 1)*"), s);
  EXPECT_FALSE(div.converged);
}

TEST(Interpret, ProductIsSequentialOrder) {
  Rng rng(43);
  const auto s = two_maps(rng);
  const auto ab = interpret(P("a b"), s);
  const auto expected = nkaq::quantum::compose(s.eval.at("a"), s.eval.at("b"));
  EXPECT_LT(max_abs(ab.transfer - nkaq::quantum::transfer_of(expected)), 1e-14);
  const Matrix rho = nkaq::quantum::random_density(2, rng);
  EXPECT_LT(max_abs(ab.apply(rho) - s.eval.at("b").apply(s.eval.at("a").apply(rho))), 1e-14);
}

TEST(Interpret, StarIsTheGeometricSum) {
  Rng rng(44);
  const auto s = two_maps(rng);
  const auto st = interpret(P("a*"), s);
  ASSERT_TRUE(st.converged);
  const Matrix t = nkaq::quantum::transfer_of(s.eval.at("a"));
  const Matrix closed = (Matrix::Identity(4, 4) - t).inverse();
  EXPECT_LT(max_abs(st.transfer - closed), 1e-10);
}

TEST(Property, DualAdjunction) {
  Rng rng(45);
  for (int i = 0; i < 50; ++i) {
    const auto s = two_maps(rng);
    const Expr e = i % 2 == 0 ? P("a (b a)* b + a") : P("(a + b)* b");
    const auto fwd = interpret(e, s);
    const auto bwd = dual_interpret(e, s);
    if (!fwd.converged) continue;
    const Matrix rho = nkaq::quantum::random_density(2, rng);
    const Matrix eff = nkaq::quantum::random_effect(2, rng);
    ASSERT_LT(std::abs((eff * fwd.apply(rho)).trace() - (bwd.apply(eff) * rho).trace()), 1e-9);
  }
}

TEST(Completeness, Examples) {
  const auto cs = completeness_setting({"a", "b"}, 2);
  EXPECT_EQ(cs.strings.size(), 7u);
  EXPECT_EQ(cs.setting.dim, 7);
  EXPECT_EQ(cs.count.at("a"), 3u);
  EXPECT_DOUBLE_EQ(cs.weight_of({"a", "b"}), 9.0);
  for (const char* text : {"a", "a + a b", "(a b)* a", "a* b*", "b a + b a"}) {
    for (const auto& s : {nkaq::series::Word{}, nkaq::series::Word{"a"}}) {
      const auto r = check_completeness_claim(P(text), s, 0.7, cs, 1e-10);
      EXPECT_TRUE(r.ok) << text << " distance " << r.distance;
    }
  }
  EXPECT_THROW(check_completeness_claim(P("1*"), {}, 1.0, cs, 1e-10), InfiniteCoefficient);
}

TEST(Completeness, CoefficientsAreReadOffTheOutput) {
  // Two copies of a word weigh twice as much.
  const auto cs = completeness_setting({"a"}, 2);
  const auto one = check_completeness_claim(P("a"), {}, 1.0, cs, 1e-10);
  const auto two = check_completeness_claim(P("a + a"), {}, 1.0, cs, 1e-10);
  EXPECT_NEAR(two.lhs.trace().real(), 2.0 * one.lhs.trace().real(), 1e-12);
}

TEST(Property, EncodingRecoversDenotation) {
  Rng rng(46);
  int loops = 0;
  for (int i = 0; i < 40; ++i) {
    nkaq::program::RandomProgramOptions opts;
    opts.qubits = 1 + i % 2;
    auto rp = nkaq::program::random_program(rng, opts);
    const auto enc = nkaq::program::EncoderSetting::automatic(rp.program, rp.ctx);
    const auto r = check_enc_recovery(rp.program, rp.ctx, enc, 1e-8);
    if (!r.denote_converged) continue;
    loops += rp.program.has_while() ? 1 : 0;
    ASSERT_TRUE(r.ok) << nkaq::program::print_program(rp.program) << " distance " << r.distance;
  }
  EXPECT_GT(loops, 5);
}

TEST(Setting, JsonRoundTripAndEffects) {
  Rng rng(47);
  const auto s = two_maps(rng);
  const auto back = setting_from_json(setting_to_json(s));
  EXPECT_EQ(back.dim, 2);
  EXPECT_LT(nkaq::quantum::choi_distance(back.eval.at("a"), s.eval.at("a")), 1e-15);
  const auto loaded = setting_from_json(nkaq::quantum::load_json_file(std::string(NKAQ_TEST_DATA) + "/flip_setting.json"));
  EXPECT_EQ(loaded.eval.size(), 2u);
  const Matrix a = nkaq::quantum::random_effect(2, rng);
  const auto c = constant_of_transfer(nkaq::quantum::transfer_of(constant_superop(a)), 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_LT(max_abs(*c - a), 1e-12);
  EXPECT_LT(nkaq::quantum::choi_distance(nkaq::quantum::dual(effect_atom_superop(a)), constant_superop(a)), 1e-12);
}
