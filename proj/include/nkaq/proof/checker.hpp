#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nkaq/proof/script.hpp"

namespace nkaq::proof {

enum class FailureKind {
  parse_error,
  unknown_rule,
  forbidden_rule,
  no_match,
  ambiguous_match,
  unproven_premise,
  target_mismatch,
  relation_mismatch,
  mixed_chain,
  goal_mismatch,
  unused_hypothesis,
  duplicate_name,
};

const char* to_string(FailureKind k);

struct StepFailure {
  FailureKind kind;
  std::string lemma;  // empty for script-level failures
  int line = 0;
  std::string message;
};

// Named results available to `using` clauses.
using Facts = std::map<std::string, Inequation>;

struct StepOutcome {
  bool ok = false;
  StepRel relation = StepRel::eq;  // relation actually licensed
  std::optional<StepFailure> failure;
  std::set<std::string> cited;  // rule and fact names touched
};

// Verifies that `next` is obtained from `current` by one application of
// the cited rule. For ≤ rules, the rewrite may happen under any +, · or *
// context; under a negation it reverses the order (negation-reverse).
StepOutcome check_step(const RuleDB& db, const Expr& current, const Expr& next, const Step& step,
                       const Facts& facts);

// Forward application: all distinct results of the step. The failure is
// NoMatch when the rule does not apply and AmbiguousMatch when several
// distinct results exist.
struct ApplyResult {
  std::vector<Expr> results;  // distinct candidate terms
  std::optional<StepFailure> failure;
};
ApplyResult apply_step(const RuleDB& db, const Expr& current, const Step& step,
                       const Facts& facts);

struct CheckReport {
  bool accepted = false;
  std::size_t lemmas = 0;
  std::size_t steps = 0;
  std::optional<StepFailure> failure;
};

CheckReport check_script(const ProofScript& script, const RuleDB& db);
CheckReport check_script_text(const std::string& text, const RuleDB& db,
                              const std::string& source = "<string>");

struct Mutant {
  int line = 0;
  std::string deleted;
  bool killed = false;
  std::string reason;
};

struct MutationReport {
  std::vector<Mutant> mutants;
  std::size_t killed() const;
  bool all_killed() const { return killed() == mutants.size(); }
};

// Deletes each step line and each hypothesis line in turn and re-checks.
MutationReport mutation_test(const std::string& text, const RuleDB& db,
                             const std::string& source = "<string>");

}  // namespace nkaq::proof
