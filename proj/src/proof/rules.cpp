#include "nkaq/proof/rules.hpp"

#include "nkaq/syntax/parser.hpp"

namespace nkaq::proof {

using syntax::Sort;

void RuleDB::add(Rule r) { rules_[r.name].push_back(std::move(r)); }

const std::vector<Rule>& RuleDB::lookup(const std::string& name) const {
  const auto* r = find(name);
  if (!r) throw UnknownRule(name);
  return *r;
}

const std::vector<Rule>* RuleDB::find(const std::string& name) const {
  auto it = rules_.find(name);
  return it == rules_.end() ? nullptr : &it->second;
}

std::vector<std::string> RuleDB::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : rules_) out.push_back(n);
  return out;
}

namespace {

syntax::Alphabet schema_alphabet() {
  syntax::Alphabet a;
  for (const char* v : {"p", "q", "r"}) a.declare_var(v);
  for (const char* v : {"a", "b"}) a.declare_var(v, Sort::effect);
  a.declare(kTopEffect, Sort::effect);
  return a;
}

class Builder {
 public:
  explicit Builder(RuleDB& db) : db_(db), alpha_(schema_alphabet()) {}

  void axiom(const std::string& name, const std::string& stmt) {
    db_.add(Rule{name, RuleKind::axiom, parse(stmt), {}, true});
  }
  void lemma(const std::string& name, const std::string& stmt) {
    db_.add(Rule{name, RuleKind::lemma, parse(stmt), {}, false});
  }
  void conditional(const std::string& name, const std::vector<std::string>& premises,
                   const std::string& stmt, bool primitive) {
    Rule r{name, RuleKind::conditional, parse(stmt), {}, primitive};
    for (const auto& p : premises) r.premises.push_back(parse(p));
    db_.add(std::move(r));
  }

 private:
  Inequation parse(const std::string& s) const { return syntax::parse_inequation(s, alpha_); }

  RuleDB& db_;
  syntax::Alphabet alpha_;
};

}  // namespace

RuleDB builtin_rules() {
  RuleDB db;
  Builder b(db);

  b.axiom("add-zero", "p + 0 = p");
  b.axiom("one-left", "1 p = p");
  b.axiom("one-right", "p 1 = p");
  b.axiom("zero-left", "0 p = 0");
  b.axiom("zero-right", "p 0 = 0");
  b.axiom("distrib-left", "p (q + r) = p q + p r");
  b.axiom("distrib-right", "(p + q) r = p r + q r");
  b.axiom("star-unfold", "1 + p p* <= p*");
  b.conditional("star-ind-left", {"q + p r <= r"}, "p* q <= r", true);
  b.conditional("star-ind-right", {"q + r p <= r"}, "q p* <= r", true);

  b.lemma("fixed-point", "1 + p p* = p*");
  b.lemma("fixed-point-right", "1 + p* p = p*");
  b.conditional("monotone-star", {"p <= q"}, "p* <= q*", false);
  b.lemma("product-star", "1 + p (q p)* q = (p q)*");
  b.lemma("sliding", "(p q)* p = p (q p)*");
  b.lemma("denesting", "(p + q)* = (p* q)* p*");
  b.lemma("denesting-right", "(p + q)* = p* (q p*)*");
  b.lemma("positivity", "0 <= p");
  b.lemma("unrolling", "(p p)* (1 + p) = p*");
  b.conditional("swap-star", {"p q = q p"}, "p* q = q p*", false);
  b.conditional("star-rewrite", {"p q = r p"}, "p q* = r* p", false);

  b.lemma("effect-lower", "0 <= a");
  b.lemma("effect-upper", "a <= e");
  b.lemma("negation-sum", "a + ~a = e");
  b.lemma("double-negation", "~~a = a");
  b.conditional("negation-reverse", {"a <= b"}, "~b <= ~a", false);
  return db;
}

std::vector<Rule> partition_rules(const Partition& p) {
  std::vector<Rule> out;
  const Expr top = Expr::atom(kTopEffect, Sort::effect);
  std::vector<Expr> weighted, negated, tops;
  for (std::size_t i = 0; i < p.symbols.size(); ++i) {
    const Expr m = Expr::atom(p.symbols[i]);
    const Expr a = Expr::var("a" + std::to_string(i), Sort::effect);
    weighted.push_back(m * a);
    negated.push_back(m * Expr::neg(a));
    tops.push_back(m * top);
  }
  out.push_back(Rule{"partition-transform", RuleKind::lemma,
                     {Expr::neg(Expr::sum(weighted)), Expr::sum(negated), Relation::eq}, {},
                     false});
  out.push_back(Rule{"partition-sum", RuleKind::axiom, {Expr::sum(tops), top, Relation::eq}, {},
                     true});
  if (p.projective) {
    for (const auto& si : p.symbols) {
      for (const auto& sj : p.symbols) {
        const Expr lhs = Expr::atom(si) * Expr::atom(sj);
        const Expr rhs = si == sj ? Expr::atom(si) : Expr::zero();
        out.push_back(Rule{"pvm", RuleKind::hypothesis, {lhs, rhs, Relation::eq}, {}, true});
      }
    }
  }
  return out;
}

std::string print_rule(const Rule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    out += (i ? " && " : "") + syntax::print_inequation(r.premises[i]);
  }
  if (!r.premises.empty()) out += " -> ";
  return out + syntax::print_inequation(r.statement);
}

}  // namespace nkaq::proof
