#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "nkaq/proof/checker.hpp"
#include "nkaq/proof/matcher.hpp"

using namespace nkaq::proof;

namespace {

Expr P(const std::string& s) { return nkaq::syntax::parse_expr(s, nkaq::syntax::Alphabet::open()); }

Step by(const std::string& rule, StepRel rel = StepRel::eq, Direction dir = Direction::lr) {
  Step s;
  s.rule = rule;
  s.relation = rel;
  s.direction = dir;
  return s;
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(NKAQ_CORPUS_DIR)) {
    if (e.path().extension() == ".nka") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Rules, Lookups) {
  const auto db = builtin_rules();
  EXPECT_EQ(print_rule(db.lookup("denesting").front()), "(p + q)* = (p* q)* p*");
  const auto& sr = db.lookup("star-rewrite").front();
  EXPECT_EQ(sr.kind, RuleKind::conditional);
  ASSERT_EQ(sr.premises.size(), 1u);
  EXPECT_EQ(nkaq::syntax::print_inequation(sr.premises[0]), "p q = r p");
  EXPECT_THROW(db.lookup("add-idem"), UnknownRule);
  const auto pr = partition_rules({"M", {"m0", "m1"}, true});
  EXPECT_EQ(pr.front().name, "partition-transform");
  EXPECT_EQ(print_rule(pr.front()), "~(m0 a0 + m1 a1) = m0 ~a0 + m1 ~a1");
  // transform, sum, and four projective laws.
  EXPECT_EQ(pr.size(), 6u);
}

TEST(Matcher, AssociativeAndCommutative) {
  const Expr pat = nkaq::syntax::Expr::sum({nkaq::syntax::Expr::var("p"), nkaq::syntax::Expr::zero()});
  EXPECT_EQ(match_all(pat, P("a b + 0")).size(), 1u);
  // p q against a three-factor product: two splits.
  const Expr pq = nkaq::syntax::Expr::prod({nkaq::syntax::Expr::var("p"), nkaq::syntax::Expr::var("q")});
  EXPECT_EQ(match_all(pq, P("a b c")).size(), 2u);
  EXPECT_TRUE(match_all(pat, P("a b")).empty());
}

TEST(Step, Examples) {
  const auto db = builtin_rules();
  EXPECT_TRUE(check_step(db, P("a (b + c)"), P("a b + a c"), by("distrib-left"), {}).ok);
  EXPECT_TRUE(check_step(db, P("a b + a c"), P("a (b + c)"), by("distrib-left", StepRel::eq, Direction::rl), {}).ok);
  EXPECT_TRUE(check_step(db, P("(a b)* a"), P("a (b a)*"), by("sliding"), {}).ok);
  EXPECT_TRUE(check_step(db, P("x (1 + a a*)"), P("x a*"), by("star-unfold", StepRel::leq), {}).ok);
  const auto idem = check_step(db, P("a + a"), P("a"), by("add-zero"), {});
  ASSERT_FALSE(idem.ok);
  EXPECT_EQ(idem.failure->kind, FailureKind::no_match);
  const auto wrong_rel = check_step(db, P("x (1 + a a*)"), P("x a*"), by("star-unfold", StepRel::eq), {});
  ASSERT_FALSE(wrong_rel.ok);
  EXPECT_EQ(wrong_rel.failure->kind, FailureKind::relation_mismatch);
  const auto unknown = check_step(db, P("a"), P("a"), by("add-idem"), {});
  EXPECT_EQ(unknown.failure->kind, FailureKind::unknown_rule);
}

TEST(Step, ConditionalNeedsItsPremise) {
  const auto db = builtin_rules();
  Step s = by("swap-star");
  const auto missing = check_step(db, P("a* b"), P("b a*"), s, {});
  ASSERT_FALSE(missing.ok);
  EXPECT_EQ(missing.failure->kind, FailureKind::unproven_premise);
  s.using_facts = {"h"};
  const Facts facts{{"h", nkaq::syntax::parse_inequation("a b = b a", nkaq::syntax::Alphabet::open())}};
  EXPECT_TRUE(check_step(db, P("a* b"), P("b a*"), s, facts).ok);
}

TEST(Script, SmallScripts) {
  const auto db = builtin_rules();
  const std::string swap =
      "alphabet: a b\n"
      "hypotheses:\n"
      "  h: a b = b a\n"
      "lemma t: a* b = b a*\n"
      "  a* b\n"
      "  b a*   = by swap-star LR using h\n";
  const auto ok = check_script_text(swap, db);
  EXPECT_TRUE(ok.accepted) << (ok.failure ? ok.failure->message : "");
  EXPECT_EQ(ok.lemmas, 1u);
  std::string no_hyp = swap;
  no_hyp.replace(no_hyp.find("  h: a b = b a\n"), 15, "");
  EXPECT_FALSE(check_script_text(no_hyp, db).accepted);
  const auto m = mutation_test(swap, db);
  EXPECT_TRUE(m.all_killed());
  // The hypothesis, the start term and the step line.
  EXPECT_EQ(m.mutants.size(), 3u);
}

TEST(Script, GoalAndTargetMismatch) {
  const auto db = builtin_rules();
  const auto wrong_goal = check_script_text(
      "alphabet: a b\nlemma t: (a b)* a = b\n  (a b)* a\n  a (b a)*   = by sliding LR\n", db);
  ASSERT_FALSE(wrong_goal.accepted);
  EXPECT_EQ(wrong_goal.failure->kind, FailureKind::goal_mismatch);
  const auto bad_rule = check_script_text(
      "alphabet: a\nuses:\nlemma t: (a a)* (1 + a) = a*\n  (a a)* (1 + a)\n  a*   = by unrolling LR\n", db);
  ASSERT_FALSE(bad_rule.accepted);
  EXPECT_EQ(bad_rule.failure->kind, FailureKind::forbidden_rule);
  EXPECT_THROW(parse_script("alphabet: a\nlemma t a = a\n"), ScriptError);
}

TEST(Script, BrokenFixtureIsRejected) {
  const auto r = check_script(load_script(std::string(NKAQ_TEST_DATA) + "/broken.nka"), builtin_rules());
  ASSERT_FALSE(r.accepted);
  EXPECT_EQ(r.failure->kind, FailureKind::unknown_rule);
}

TEST(Corpus, EveryScriptIsAccepted) {
  const auto db = builtin_rules();
  const auto files = corpus_files();
  ASSERT_GE(files.size(), 10u);
  for (const auto& f : files) {
    const auto r = check_script(load_script(f.string()), db);
    EXPECT_TRUE(r.accepted) << f.filename() << ": " << (r.failure ? r.failure->message : "");
  }
}

TEST(Corpus, MutantsOfTheStarLemmasAreKilled) {
  for (const char* name : {"star_lemmas.nka", "monotone_star.nka", "swap_star.nka"}) {
    std::ifstream in(std::string(NKAQ_CORPUS_DIR) + "/" + name);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto m = mutation_test(text, builtin_rules(), name);
    EXPECT_GT(m.mutants.size(), 3u) << name;
    EXPECT_TRUE(m.all_killed()) << name << ": " << m.killed() << "/" << m.mutants.size();
  }
}
