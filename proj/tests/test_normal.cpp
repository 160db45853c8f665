#include <gtest/gtest.h>

#include "nkaq/normal/normalize.hpp"
#include "nkaq/program/random_program.hpp"
#include "nkaq/suites/criteria.hpp"

using namespace nkaq::normal;
using nkaq::program::Program;
using nkaq::quantum::Rng;

TEST(Normalize, SkipIsExact) {
  ProgramContext ctx;
  ctx.layout = nkaq::program::VariableLayout({{"q", 2}});
  const auto nf = normalize_program(Program::skip(), ctx);
  const auto chk = verify_normal_form(Program::skip(), nf, 1e-12);
  EXPECT_TRUE(chk.ok);
  EXPECT_TRUE(chk.shape_ok);
  EXPECT_LT(chk.distance, 1e-15);
  EXPECT_EQ(nf.composed().while_count(), 1u);
}

TEST(TwoLoops, HandWrittenLoopMatches) {
  Rng rng(42);
  for (bool x : {true, false}) {
    const auto s = nkaq::suites::two_loop_pair(rng, x);
    const auto a = nkaq::program::denote_transfer(s.original, s.ctx);
    const auto b = nkaq::program::denote_transfer(s.constructed, s.ctx);
    ASSERT_TRUE(a.converged && b.converged);
    EXPECT_LT(nkaq::quantum::max_abs(a.transfer - b.transfer), 1e-9);
    EXPECT_EQ(s.constructed.while_count(), 1u);
    EXPECT_EQ(s.loops.while_count(), 2u);
  }
}

TEST(TwoLoops, NormalFormHasOneLoopAndAThreeValuedGuard) {
  Rng rng(43);
  const auto s = nkaq::suites::two_loop_pair(rng, false);
  const auto nf = normalize_program(s.loops, s.ctx);
  EXPECT_EQ(nf.composed().while_count(), 1u);
  EXPECT_FALSE(nf.prefix.has_while());
  EXPECT_FALSE(nf.body.has_while());
  ASSERT_FALSE(nf.guards.empty());
  EXPECT_EQ(nf.guards.back().dim, 3);
  const auto chk = verify_normal_form(s.loops, nf, 1e-8);
  EXPECT_TRUE(chk.ok) << chk.distance;
  EXPECT_TRUE(guard_hygiene(nf, 1e-9));
}

TEST(TwoLoops, EncodingsMatchTheScriptGoal) {
  Rng rng(44);
  const auto s = nkaq::suites::two_loop_pair(rng, false);
  const auto enc = nkaq::suites::two_loop_encoder(s);
  const auto script = nkaq::proof::load_script(std::string(NKAQ_CORPUS_DIR) + "/normal_form_two_loops.nka");
  bool found = false;
  for (const auto& l : script.lemmas) {
    if (l.name != "flatten") continue;
    found = true;
    EXPECT_EQ(l.goal.lhs, nkaq::program::encode(s.constructed, enc));
    EXPECT_EQ(l.goal.rhs, nkaq::program::encode(s.original, enc));
  }
  EXPECT_TRUE(found);
}

TEST(Verify, DetectsATamperedBody) {
  Rng rng(45);
  const auto s = nkaq::suites::two_loop_pair(rng, false);
  auto nf = normalize_program(s.loops, s.ctx);
  nf.body = Program::seq(nf.body, Program::unitary("X", {"q"}));
  const auto chk = verify_normal_form(s.loops, nf, 1e-8);
  EXPECT_FALSE(chk.ok);
  EXPECT_GT(chk.distance, 1e-3);
}

TEST(Hygiene, RejectsAnOperationAcrossGuardAndData) {
  Rng rng(46);
  const auto s = nkaq::suites::two_loop_pair(rng, false);
  auto nf = normalize_program(s.loops, s.ctx);
  ASSERT_TRUE(guard_hygiene(nf, 1e-9));
  const auto& g = nf.guards.front();
  nf.context.unitaries.emplace("SWAPLIKE", nkaq::quantum::random_unitary(g.dim * 2, rng));
  nf.body = Program::seq(nf.body, Program::unitary("SWAPLIKE", {g.name, "q"}));
  EXPECT_FALSE(guard_hygiene(nf, 1e-9));
}

TEST(Normalize, CaseOfLoopsGetsOneGuardValuePerBranchPlusOne) {
  Rng rng(47);
  ProgramContext ctx;
  ctx.layout = nkaq::program::VariableLayout({{"q", 2}});
  ctx.unitaries.emplace("U", nkaq::quantum::random_unitary(2, rng));
  ctx.measurements.emplace("M", nkaq::quantum::random_projective_measurement(2, 2, rng));
  const Program p = nkaq::program::parse_program(
      "case M[q] { 0 -> while M[q]=1 do q := U[q] done; 1 -> while M[q]=1 do q := H[q] done } end", ctx);
  const auto nf = normalize_program(p, ctx);
  ASSERT_FALSE(nf.guards.empty());
  EXPECT_EQ(nf.guards.back().dim, 3);
  const auto chk = verify_normal_form(p, nf, 1e-8);
  EXPECT_TRUE(chk.ok && chk.shape_ok) << chk.distance;
  EXPECT_TRUE(guard_hygiene(nf, 1e-9));
}

TEST(Property, RandomProgramsNormalize) {
  Rng rng(48);
  int done = 0;
  for (int attempt = 0; attempt < 500 && done < 12; ++attempt) {
    nkaq::program::RandomProgramOptions opts;
    opts.qubits = 1;
    auto rp = nkaq::program::random_program(rng, opts);
    if (!rp.program.has_while()) continue;
    const auto nf = normalize_program(rp.program, rp.ctx);
    if (nf.context.layout.total_dim() > 64) continue;
    const auto chk = verify_normal_form(rp.program, nf, 1e-8);
    ASSERT_TRUE(chk.ok && chk.shape_ok) << nkaq::program::print_program(rp.program) << " " << chk.distance;
    ASSERT_TRUE(guard_hygiene(nf, 1e-9));
    ++done;
  }
  EXPECT_EQ(done, 12);
}
