#include <gtest/gtest.h>

#include "nkaq/quantum/random.hpp"
#include "nkaq/suites/lemma_instances.hpp"
#include "nkaq/syntax/parser.hpp"

using namespace nkaq::syntax;

namespace {

Expr P(const std::string& s) { return parse_expr(s, Alphabet::open()); }

}  // namespace

TEST(Parse, StarredProductThenAtom) {
  const Expr e = P("(m0 p)* m1");
  ASSERT_TRUE(e.is(ExprKind::prod));
  ASSERT_EQ(e.arity(), 2u);
  EXPECT_TRUE(e.child(0).is(ExprKind::star));
  EXPECT_EQ(e.child(0).child(0), Expr::prod({Expr::atom("m0"), Expr::atom("p")}));
  EXPECT_EQ(e.child(1), Expr::atom("m1"));
}

TEST(Parse, ConstantsAndDuplicates) {
  EXPECT_TRUE(P("0").is(ExprKind::zero));
  EXPECT_TRUE(P("1").is(ExprKind::one));
  const Expr aa = P("a + a");
  ASSERT_TRUE(aa.is(ExprKind::sum));
  EXPECT_EQ(aa.arity(), 2u);
  EXPECT_EQ(aa.child(0), aa.child(1));
}

TEST(Parse, ProductSeparators) {
  EXPECT_EQ(P("a b c"), P("a\xC2\xB7 b . c"));
  EXPECT_EQ(P("a (b c)"), P("(a b) c"));
  EXPECT_EQ(P("u' u_inv"), Expr::prod({Expr::atom("u'"), Expr::atom("u_inv")}));
}

TEST(Parse, Errors) {
  EXPECT_THROW(P("(a + b"), ParseError);
  EXPECT_THROW(P("a + "), ParseError);
  try {
    P("a + )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  Alphabet closed;
  closed.declare("a");
  EXPECT_THROW(parse_expr("a b", closed), UndeclaredSymbol);
  EXPECT_NO_THROW(parse_expr("a a*", closed));
}

TEST(Print, MinimalParentheses) {
  EXPECT_EQ(print_expr(Expr::prod({Expr::star(Expr::prod({Expr::atom("m0"), Expr::atom("p")})), Expr::atom("m1")})),
            "(m0 p)* m1");
  EXPECT_EQ(print_expr(Expr::sum({Expr::atom("a"), Expr::atom("a")})), "a + a");
  EXPECT_EQ(print_expr(Expr::zero()), "0");
  EXPECT_EQ(print_expr(P("(a + b) c")), "(a + b) c");
  EXPECT_EQ(print_expr(P("(a*)*")), "a**");
}

TEST(Substitute, Examples) {
  const Binding b1{{"p", Expr::atom("a")}, {"q", Expr::atom("b")}};
  EXPECT_EQ(substitute(P("(p q)* p"), b1), P("(a b)* a"));
  EXPECT_EQ(substitute(P("p*"), {{"p", Expr::zero()}}), P("0*"));
  EXPECT_EQ(substitute(P("p + r"), {{"p", P("m0 x")}}), P("m0 x + r"));
}

TEST(Canonical, SumOrderAndMultiplicity) {
  const Expr e = P("b + a + a c + a");
  EXPECT_EQ(e, P("a + a + b + a c"));
  EXPECT_EQ(e.arity(), 4u);
  EXPECT_EQ(canonical(e), e);
  EXPECT_EQ(canonical(canonical(e)), canonical(e));
}

TEST(Property, RoundTripOnRandomExpressions) {
  nkaq::quantum::Rng rng(42);
  nkaq::suites::RandomExprOptions opts;
  opts.depth = 6;
  opts.proper_epsilon_free = false;
  for (int i = 0; i < 1000; ++i) {
    const Expr e = nkaq::suites::random_expr(rng, opts);
    const std::string s = print_expr(e);
    ASSERT_EQ(P(s), canonical(e)) << s;
  }
}

TEST(Property, SubstituteCommutesWithCanonical) {
  nkaq::quantum::Rng rng(43);
  nkaq::suites::RandomExprOptions opts;
  opts.depth = 4;
  opts.proper_epsilon_free = false;
  for (int i = 0; i < 200; ++i) {
    const Expr e = nkaq::suites::random_expr(rng, opts);
    const Binding b{{"a", nkaq::suites::random_expr(rng, opts)}, {"c", nkaq::suites::random_expr(rng, opts)}};
    const Expr s = substitute(e, b);
    ASSERT_EQ(s, canonical(s));
    ASSERT_EQ(substitute(canonical(e), b), s);
  }
}

TEST(Inequation, ParsesBothRelations) {
  const auto q = parse_inequation("p q <= q", Alphabet::open());
  EXPECT_EQ(q.relation, Relation::leq);
  EXPECT_EQ(q.lhs, P("p q"));
  const auto r = parse_inequation("a = a + 0", Alphabet::open());
  EXPECT_EQ(r.relation, Relation::eq);
  EXPECT_EQ(print_inequation(r), "a = 0 + a");
}
