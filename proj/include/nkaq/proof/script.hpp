#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkaq/proof/rules.hpp"
#include "nkaq/syntax/parser.hpp"

namespace nkaq::proof {

using syntax::Binding;
using syntax::Path;

enum class StepRel { eq, leq, geq };
enum class Direction { lr, rl };

const char* to_string(StepRel r);

struct Step {
  StepRel relation = StepRel::eq;
  std::string rule;
  Direction direction = Direction::lr;
  std::optional<Path> at;
  Binding with;
  std::vector<std::string> using_facts;
};

// One line of a chain: the term, and (except on the first line) the step
// that justifies moving from the previous term to this one.
struct ChainLine {
  Expr term;
  std::optional<Step> step;
  int line = 0;
};

struct Chain {
  std::vector<ChainLine> lines;
};

struct Lemma {
  std::string name;
  Inequation goal;
  std::vector<Chain> chains;
  int line = 0;
};

struct Hypothesis {
  std::string name;
  Inequation statement;
  int line = 0;
};

struct ProofScript {
  std::string source;  // file name or "<string>"
  syntax::Alphabet alphabet;
  std::vector<Hypothesis> hypotheses;
  std::vector<Partition> partitions;
  std::optional<std::set<std::string>> uses;
  std::vector<Lemma> lemmas;
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-oriented format:
//   alphabet: m0 m1 p          effects: a b          vars: x y
//   effect-vars: u             uses: star-unfold, star-ind-left
//   partition M [projective]: m0 m1
//   let X = m0 p + m1          (abbreviation, expanded wherever X occurs later)
//   hypotheses:
//     h1: m1 m1 = m1
//   lemma name: lhs = rhs
//     start-term
//     next-term   = by rule LR [at 0.1] [with p=expr, ...] [using fact, ...]
//   and                        (starts a second chain of the same lemma)
// "#" starts a comment. The top effect "e" is always declared.
ProofScript parse_script(const std::string& text, const std::string& source = "<string>");
ProofScript load_script(const std::string& path);

// Source line numbers that are steps (chain lines) or hypothesis
// declarations; the mutation harness deletes these one at a time.
std::vector<int> mutable_lines(const ProofScript& s);

}  // namespace nkaq::proof
