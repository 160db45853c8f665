#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkaq/syntax/expr.hpp"

namespace nkaq::proof {

using syntax::Expr;
using syntax::Inequation;
using syntax::Relation;

enum class RuleKind { axiom, lemma, hypothesis, conditional };

struct Rule {
  std::string name;
  RuleKind kind = RuleKind::axiom;
  Inequation statement;            // schema over Var metavariables
  std::vector<Inequation> premises;  // nonempty only for conditional rules
  // Part of the base axiom set. Scripts with a "uses:" header may cite these
  // freely and everything else only when listed.
  bool primitive = false;
};

class UnknownRule : public std::runtime_error {
 public:
  explicit UnknownRule(const std::string& name)
      : std::runtime_error("unknown rule '" + name + "'") {}
};

// A name may carry several statements: partition rules get one instance per
// declared partition, and the projective laws one per pair of outcomes.
class RuleDB {
 public:
  void add(Rule r);
  const std::vector<Rule>& lookup(const std::string& name) const;  // throws UnknownRule
  const std::vector<Rule>* find(const std::string& name) const;
  bool contains(const std::string& name) const { return rules_.count(name) != 0; }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::vector<Rule>> rules_;
};

// Axioms, the derived star lemmas and the effect-algebra laws. The reserved
// effect atom "e" is the top effect.
RuleDB builtin_rules();

inline const char* kTopEffect = "e";

// A syntactic partition: effect-preserving elements summing to the top.
struct Partition {
  std::string name;
  std::vector<std::string> symbols;
  bool projective = false;
};

// partition-transform, partition-sum and (when projective) the pvm laws
// m_i m_i = m_i and m_i m_j = 0 for i != j.
std::vector<Rule> partition_rules(const Partition& p);

std::string print_rule(const Rule& r);

}  // namespace nkaq::proof
