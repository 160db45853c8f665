#include <gtest/gtest.h>

#include <functional>

#include "nkaq/quantum/random.hpp"
#include "nkaq/series/series.hpp"
#include "nkaq/suites/lemma_instances.hpp"
#include "nkaq/syntax/parser.hpp"

using namespace nkaq::series;
using nkaq::syntax::Expr;
using nkaq::syntax::ExprKind;

namespace {

Expr P(const std::string& s) { return nkaq::syntax::parse_expr(s, nkaq::syntax::Alphabet::open()); }

const ExtNat INF = ExtNat::infinity();

// Direct reading of the series definitions with no memo table: sums add,
// products split the word every way, and a star with zero empty-word
// coefficient peels off one nonempty factor at a time. Only called on
// proper expressions.
ExtNat naive_coeff(const Expr& e, const Word& w) {
  switch (e.kind()) {
    case ExprKind::zero: return 0;
    case ExprKind::one: return w.empty() ? 1 : 0;
    case ExprKind::atom: return w.size() == 1 && w[0] == e.name() ? 1 : 0;
    case ExprKind::sum: {
      ExtNat s = 0;
      for (const auto& c : e.children()) s += naive_coeff(c, w);
      return s;
    }
    case ExprKind::prod: {
      const Expr head = e.child(0);
      const Expr tail = e.arity() == 2 ? e.child(1)
                                       : Expr::prod(std::vector<Expr>(e.children().begin() + 1, e.children().end()));
      ExtNat s = 0;
      for (std::size_t k = 0; k <= w.size(); ++k) {
        s += naive_coeff(head, Word(w.begin(), w.begin() + static_cast<long>(k))) *
             naive_coeff(tail, Word(w.begin() + static_cast<long>(k), w.end()));
      }
      return s;
    }
    case ExprKind::star: {
      if (w.empty()) return 1;
      ExtNat s = 0;
      for (std::size_t k = 1; k <= w.size(); ++k) {
        s += naive_coeff(e.child(0), Word(w.begin(), w.begin() + static_cast<long>(k))) *
             naive_coeff(e, Word(w.begin() + static_cast<long>(k), w.end()));
      }
      return s;
    }
    default: throw std::logic_error("naive_coeff: unsupported node");
  }
}

std::vector<Word> all_words(const std::vector<std::string>& sigma, int max_len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (int n = 1; n <= max_len; ++n) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& a : sigma) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(w);
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace

TEST(ExtNat, Table) {
  EXPECT_EQ(extnat_eval(ExtNatOp::star, {0}), ExtNat(1));
  EXPECT_EQ(extnat_eval(ExtNatOp::mul, {0, INF}), ExtNat(0));
  EXPECT_EQ(extnat_eval(ExtNatOp::mul, {INF, 0}), ExtNat(0));
  EXPECT_EQ(extnat_eval(ExtNatOp::star, {2}), INF);
  EXPECT_EQ(extnat_eval(ExtNatOp::star, {1}), INF);
  EXPECT_EQ(extnat_eval(ExtNatOp::mul, {3, INF}), INF);
  EXPECT_EQ(extnat_eval(ExtNatOp::add, {3, INF}), INF);
  EXPECT_EQ(extnat_eval(ExtNatOp::add, {3, 4}), ExtNat(7));
  EXPECT_EQ(INF.star(), INF);
  EXPECT_LT(ExtNat(1000000), INF);
  EXPECT_EQ(ExtNat::parse("INF"), INF);
  EXPECT_EQ(ExtNat(12).str(), "12");
}

TEST(ExtNat, CountableSums) {
  EXPECT_EQ(countable_sum({1, 2, 3}), ExtNat(6));
  EXPECT_EQ(countable_sum({1, INF}), INF);
  EXPECT_EQ(countable_sum({0, 0}, true), INF);
  EXPECT_EQ(countable_sum({}), ExtNat(0));
}

TEST(Coeff, Examples) {
  EXPECT_EQ(coeff(P("a"), {"a"}), ExtNat(1));
  EXPECT_EQ(coeff(P("a"), {}), ExtNat(0));
  EXPECT_EQ(coeff(P("a + a"), {"a"}), ExtNat(2));
  EXPECT_EQ(coeff(P("1*"), {}), INF);
  EXPECT_EQ(coeff(P("(a b)*"), {"a", "b", "a", "b"}), ExtNat(1));
  EXPECT_EQ(coeff(P("(a b)*"), {"a", "b", "a"}), ExtNat(0));
}

TEST(Coeff, ImproperStarRule) {
  // (1 + a)* puts infinite weight on every word over a.
  EXPECT_EQ(coeff(P("(1 + a)*"), {}), INF);
  EXPECT_EQ(coeff(P("(1 + a)*"), {"a", "a"}), INF);
  EXPECT_EQ(coeff(P("(1 + a)*"), {"b"}), ExtNat(0));
  EXPECT_EQ(coeff(P("(1 + a)* b"), {"b"}), INF);
  EXPECT_EQ(coeff(P("0 (1 + a)*"), {"a"}), ExtNat(0));
}

TEST(Coeff, AgreesWithNaiveOracle) {
  nkaq::quantum::Rng rng(42);
  nkaq::suites::RandomExprOptions opts;
  opts.depth = 3;
  const auto words = all_words(opts.alphabet, 4);
  for (int i = 0; i < 60; ++i) {
    const Expr e = nkaq::suites::random_expr(rng, opts);
    for (const auto& w : words) ASSERT_EQ(coeff(e, w), naive_coeff(e, w)) << nkaq::syntax::print_expr(e);
  }
}

TEST(Coeff, SemiringHomomorphismAndFixedPoint) {
  nkaq::quantum::Rng rng(44);
  nkaq::suites::RandomExprOptions opts;
  opts.alphabet = {"a", "b"};
  const auto words = all_words(opts.alphabet, 5);
  for (int i = 0; i < 40; ++i) {
    const Expr e = nkaq::suites::random_expr(rng, opts);
    const Expr f = nkaq::suites::random_expr(rng, opts);
    const Expr es = Expr::star(e);
    const Expr unfolded = Expr::sum({Expr::one(), Expr::prod({e, es})});
    for (const auto& w : words) {
      ASSERT_EQ(coeff(Expr::sum({e, f}), w), coeff(e, w) + coeff(f, w));
      ExtNat conv = 0;
      for (std::size_t k = 0; k <= w.size(); ++k) {
        conv += coeff(e, Word(w.begin(), w.begin() + static_cast<long>(k))) *
                coeff(f, Word(w.begin() + static_cast<long>(k), w.end()));
      }
      ASSERT_EQ(coeff(Expr::prod({e, f}), w), conv);
      ASSERT_EQ(coeff(es, w), coeff(unfolded, w));
    }
  }
}

TEST(Bounded, Examples) {
  EXPECT_TRUE(bounded_equiv(P("(p q)* p"), P("p (q p)*"), 6).equal);
  const auto r = bounded_equiv(P("a + a"), P("a"), 1);
  ASSERT_FALSE(r.equal);
  EXPECT_EQ(r.counterexample->word, Word{"a"});
  EXPECT_EQ(r.counterexample->lhs, ExtNat(2));
  EXPECT_EQ(r.counterexample->rhs, ExtNat(1));
  EXPECT_TRUE(bounded_equiv(P("(a + b)* a"), P("(a + b)* a"), 8).equal);
}

TEST(Bounded, ShortestThenLeastWitness) {
  // Differ on "b a" and "a b a"; the shorter one is reported.
  const auto r = bounded_equiv(P("a + b a + a b a"), P("a"), 4);
  ASSERT_FALSE(r.equal);
  EXPECT_EQ(r.counterexample->word, (Word{"b", "a"}));
  const auto s = bounded_equiv(P("b b + a b"), P("0"), 3);
  ASSERT_FALSE(s.equal);
  EXPECT_EQ(s.counterexample->word, (Word{"a", "b"}));
}

TEST(Bounded, Order) {
  EXPECT_TRUE(bounded_leq(P("a"), P("a + b"), 4).equal);
  EXPECT_FALSE(bounded_leq(P("a + a"), P("a"), 2).equal);
  EXPECT_TRUE(bounded_leq(P("0"), P("a*"), 4).equal);
}

TEST(Glushkov, SmallAutomata) {
  const auto a = glushkov_automaton(P("a"));
  EXPECT_EQ(a.states, 2u);
  EXPECT_EQ(a.weight({"a"}), Rational(1));
  EXPECT_EQ(a.weight({}), Rational(0));
  EXPECT_EQ(a.weight({"a", "a"}), Rational(0));
  const auto ab = glushkov_automaton(P("(a b)*"));
  EXPECT_EQ(ab.weight({"a", "b", "a", "b"}), Rational(1));
  EXPECT_EQ(ab.weight({"a", "b", "a"}), Rational(0));
  EXPECT_EQ(ab.weight({}), Rational(1));
  EXPECT_THROW(glushkov_automaton(P("1*")), ImproperStar);
}

TEST(Glushkov, MatchesCoefficients) {
  nkaq::quantum::Rng rng(45);
  nkaq::suites::RandomExprOptions opts;
  opts.alphabet = {"a", "b"};
  opts.depth = 3;
  const auto words = all_words(opts.alphabet, 6);
  for (int i = 0; i < 40; ++i) {
    const Expr e = nkaq::suites::random_expr(rng, opts);
    const auto aut = glushkov_automaton(e);
    for (const auto& w : words) {
      const auto c = coeff(e, w);
      ASSERT_FALSE(c.is_infinite());
      ASSERT_EQ(aut.weight(w), Rational(c.value())) << nkaq::syntax::print_expr(e);
    }
  }
}

TEST(Exact, Examples) {
  EXPECT_EQ(exact_equiv(P("(p + q)*"), P("(p* q)* p*")).verdict, ExactResult::Verdict::equal);
  const auto d = exact_equiv(P("a + a"), P("a"));
  EXPECT_EQ(d.verdict, ExactResult::Verdict::distinguished);
  EXPECT_EQ(d.witness, Word{"a"});
  EXPECT_EQ(exact_equiv(P("1*"), P("1")).verdict, ExactResult::Verdict::unsupported);
  EXPECT_EQ(exact_equiv(P("a* a*"), P("a*")).verdict, ExactResult::Verdict::distinguished);
}

TEST(Exact, NeverContradictsBounded) {
  nkaq::quantum::Rng rng(46);
  nkaq::suites::RandomExprOptions opts;
  opts.alphabet = {"a", "b"};
  opts.depth = 2;
  int distinguished = 0;
  for (int i = 0; i < 300; ++i) {
    const Expr e = nkaq::suites::random_expr(rng, opts);
    const Expr f = i % 3 == 0 ? Expr::sum({e, Expr::zero()}) : nkaq::suites::random_expr(rng, opts);
    const auto x = exact_equiv(e, f);
    ASSERT_NE(x.verdict, ExactResult::Verdict::unsupported);
    if (x.verdict == ExactResult::Verdict::equal) {
      ASSERT_TRUE(bounded_equiv(e, f, 6).equal);
    } else {
      ++distinguished;
      ASSERT_NE(coeff(e, x.witness), coeff(f, x.witness));
    }
  }
  EXPECT_GT(distinguished, 50);
}

TEST(Truncated, SerialAndParallelAgree) {
  nkaq::quantum::Rng rng(47);
  nkaq::suites::RandomExprOptions opts;
  opts.depth = 3;
  opts.proper_epsilon_free = false;
  const WordIndex idx(opts.alphabet, 5);
  for (int i = 0; i < 30; ++i) {
    const Expr e = nkaq::suites::random_expr(rng, opts);
    const auto s = truncated_series(e, idx, nkaq::Exec::serial);
    const auto p = truncated_series(e, idx, nkaq::Exec::parallel);
    ASSERT_EQ(s.coeffs(), p.coeffs());
    for (std::size_t id = 0; id < idx.size(); id += 17) ASSERT_EQ(s.coeffs()[id], coeff(e, idx.word(id)));
  }
}

TEST(Truncated, DumpFormat) {
  const WordIndex idx({"a"}, 2);
  const auto s = truncated_series(P("1 + a + a a"), idx);
  EXPECT_EQ(s.dump(), "eps\t1\na\t1\naa\t1\n");
  const auto t = truncated_series(P("1*"), WordIndex({"a"}, 1));
  EXPECT_EQ(t.dump(), "eps\tINF\n");
}

TEST(WordIndexTest, Layout) {
  const WordIndex idx({"a", "b"}, 3);
  EXPECT_EQ(idx.size(), 15u);
  EXPECT_EQ(idx.count_of_length(2), 4u);
  for (std::size_t id = 0; id < idx.size(); ++id) EXPECT_EQ(idx.index(idx.word(id)), id);
  EXPECT_EQ(parse_word("a b", {"a", "b"}), (Word{"a", "b"}));
  EXPECT_EQ(parse_word("eps", {"a"}), Word{});
}
