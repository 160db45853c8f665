#include "nkaq/proof/checker.hpp"

#include <algorithm>
#include <unordered_set>

#include "nkaq/proof/matcher.hpp"

namespace nkaq::proof {

using syntax::print_expr;

const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::parse_error: return "ParseError";
    case FailureKind::unknown_rule: return "UnknownRule";
    case FailureKind::forbidden_rule: return "ForbiddenRule";
    case FailureKind::no_match: return "NoMatch";
    case FailureKind::ambiguous_match: return "AmbiguousMatch";
    case FailureKind::unproven_premise: return "UnprovenPremise";
    case FailureKind::target_mismatch: return "TargetMismatch";
    case FailureKind::relation_mismatch: return "RelationMismatch";
    case FailureKind::mixed_chain: return "MixedChain";
    case FailureKind::goal_mismatch: return "GoalMismatch";
    case FailureKind::unused_hypothesis: return "UnusedHypothesis";
    case FailureKind::duplicate_name: return "DuplicateName";
  }
  return "?";
}

namespace {

StepRel licensed(const Rule& r, Direction d, bool negated) {
  if (r.statement.relation == Relation::eq) return StepRel::eq;
  const bool up = (d == Direction::lr) != negated;
  return up ? StepRel::leq : StepRel::geq;
}

bool relation_accepts(StepRel declared, StepRel got) {
  return declared == got || got == StepRel::eq;
}

// Extends b so that every premise of the rule is one of the cited facts.
// An equality fact may serve either orientation and may discharge a ≤ premise.
void premise_bindings(const std::vector<Inequation>& premises, std::size_t i,
                      const std::vector<const Inequation*>& facts, const Binding& b,
                      std::vector<Binding>& out) {
  if (i == premises.size()) {
    out.push_back(b);
    return;
  }
  const Inequation& prem = premises[i];
  for (const Inequation* f : facts) {
    if (prem.relation == Relation::eq && f->relation != Relation::eq) continue;
    std::vector<std::pair<const Expr*, const Expr*>> sides{{&f->lhs, &f->rhs}};
    if (f->relation == Relation::eq) sides.emplace_back(&f->rhs, &f->lhs);
    for (const auto& [fl, fr] : sides) {
      match(prem.lhs, *fl, b, [&](const Binding& b1) {
        match(prem.rhs, *fr, b1, [&](const Binding& b2) {
          premise_bindings(premises, i + 1, facts, b2, out);
          return true;
        });
        return true;
      });
    }
  }
}

struct Candidate {
  Expr result;
  StepRel relation;
  Path path;
};

struct Enumeration {
  std::vector<Candidate> candidates;
  bool any_site = false;       // the rule's left side matched somewhere
  bool premise_failed = false;
  std::set<std::string> unbound;
};

// Calls `on` for every rewrite of `current` licensed by the step; `on`
// returns false to stop early.
template <class On>
void enumerate(const std::vector<Rule>& rules, const Expr& current, const Step& step,
               const std::vector<const Inequation*>& facts, Enumeration& en, On on) {
  bool stop = false;
  for (const Rule& rule : rules) {
    if (stop) return;
    const Expr& from = step.direction == Direction::lr ? rule.statement.lhs : rule.statement.rhs;
    const Expr& to = step.direction == Direction::lr ? rule.statement.rhs : rule.statement.lhs;
    const auto to_vars = vars_of(to);
    for_each_site(current, from, step.at, [&](const Site& site) {
      if (stop) return;
      match(from, site.focus, step.with, [&](const Binding& b) {
        en.any_site = true;
        std::vector<Binding> full;
        if (rule.premises.empty()) {
          full.push_back(b);
        } else {
          premise_bindings(rule.premises, 0, facts, b, full);
          if (full.empty()) en.premise_failed = true;
        }
        for (const auto& fb : full) {
          bool complete = true;
          for (const auto& v : to_vars) {
            if (!fb.count(v)) {
              en.unbound.insert(v);
              complete = false;
            }
          }
          if (!complete) continue;
          Candidate c{site.plug(instantiate(to, fb)), licensed(rule, step.direction, site.negated),
                      site.path};
          if (!on(c)) {
            stop = true;
            return false;
          }
        }
        return true;
      });
    });
  }
}

std::optional<StepFailure> resolve(const RuleDB& db, const Step& step, const Facts& facts,
                                   const std::vector<Rule>*& rules,
                                   std::vector<const Inequation*>& cited) {
  rules = db.find(step.rule);
  if (!rules) return StepFailure{FailureKind::unknown_rule, "", 0, "unknown rule '" + step.rule + "'"};
  for (const auto& name : step.using_facts) {
    auto it = facts.find(name);
    if (it == facts.end()) {
      return StepFailure{FailureKind::unproven_premise, "", 0, "'" + name + "' is not a proven fact"};
    }
    cited.push_back(&it->second);
  }
  bool conditional = false;
  for (const auto& r : *rules) conditional = conditional || !r.premises.empty();
  if (conditional && cited.empty()) {
    return StepFailure{FailureKind::unproven_premise, "", 0,
                       "conditional rule '" + step.rule + "' needs a 'using' clause"};
  }
  return std::nullopt;
}

StepFailure explain(const Enumeration& en, const Step& step) {
  const std::string where = step.at ? " at " + format_path(*step.at) : "";
  if (!en.any_site) {
    return {FailureKind::no_match, "", 0, "rule '" + step.rule + "' does not apply" + where};
  }
  if (en.candidates.empty() && en.premise_failed) {
    return {FailureKind::unproven_premise, "", 0,
            "cited facts do not discharge the premises of '" + step.rule + "'"};
  }
  if (en.candidates.empty() && !en.unbound.empty()) {
    std::string vs;
    for (const auto& v : en.unbound) vs += (vs.empty() ? "" : ", ") + v;
    return {FailureKind::ambiguous_match, "", 0,
            "right-hand variables {" + vs + "} of '" + step.rule + "' need a 'with' binding"};
  }
  std::string msg = "no application of '" + step.rule + "'" + where + " yields the next term";
  std::unordered_set<Expr, syntax::ExprHash> seen;
  int shown = 0;
  for (const auto& c : en.candidates) {
    if (!seen.insert(c.result).second) continue;
    if (shown++ == 3) {
      msg += "; ...";
      break;
    }
    msg += "; candidate: " + print_expr(c.result);
  }
  return {FailureKind::target_mismatch, "", 0, msg};
}

}  // namespace

StepOutcome check_step(const RuleDB& db, const Expr& current, const Expr& next, const Step& step,
                       const Facts& facts) {
  StepOutcome out;
  out.cited.insert(step.rule);
  out.cited.insert(step.using_facts.begin(), step.using_facts.end());
  const std::vector<Rule>* rules = nullptr;
  std::vector<const Inequation*> cited;
  if (auto f = resolve(db, step, facts, rules, cited)) {
    out.failure = f;
    return out;
  }
  Enumeration en;
  bool wrong_relation = false;
  StepRel got = StepRel::eq;
  try {
    enumerate(*rules, current, step, cited, en, [&](const Candidate& c) {
      if (c.result != next) {
        if (en.candidates.size() < 64) en.candidates.push_back(c);
        return true;
      }
      if (!relation_accepts(step.relation, c.relation)) {
        wrong_relation = true;
        got = c.relation;
        return true;
      }
      out.ok = true;
      out.relation = c.relation == StepRel::eq ? step.relation : c.relation;
      return false;
    });
  } catch (const TooManySites& e) {
    out.failure = StepFailure{FailureKind::no_match, "", 0, e.what()};
    return out;
  }
  if (out.ok) return out;
  if (wrong_relation) {
    out.failure = StepFailure{FailureKind::relation_mismatch, "", 0,
                              std::string("step is licensed as '") + to_string(got) +
                                  "' but declared '" + to_string(step.relation) + "'"};
    return out;
  }
  out.failure = explain(en, step);
  return out;
}

ApplyResult apply_step(const RuleDB& db, const Expr& current, const Step& step,
                       const Facts& facts) {
  ApplyResult out;
  const std::vector<Rule>* rules = nullptr;
  std::vector<const Inequation*> cited;
  if (auto f = resolve(db, step, facts, rules, cited)) {
    out.failure = f;
    return out;
  }
  Enumeration en;
  std::unordered_set<Expr, syntax::ExprHash> seen;
  enumerate(*rules, current, step, cited, en, [&](const Candidate& c) {
    if (seen.insert(c.result).second) out.results.push_back(c.result);
    return true;
  });
  if (out.results.empty()) {
    out.failure = explain(en, step);
  } else if (out.results.size() > 1) {
    out.failure = StepFailure{FailureKind::ambiguous_match, "", 0,
                              std::to_string(out.results.size()) + " distinct results for '" +
                                  step.rule + "'; give a position or binding"};
  }
  return out;
}

namespace {

struct ChainResult {
  Expr start, end;
  StepRel relation = StepRel::eq;
};

class ScriptChecker {
 public:
  ScriptChecker(const ProofScript& s, const RuleDB& builtins) : script_(s) {
    for (const auto& name : builtins.names()) {
      for (const auto& r : builtins.lookup(name)) {
        if (!script_.uses || r.primitive || script_.uses->count(name)) db_.add(r);
      }
    }
    for (const auto& p : script_.partitions) {
      for (auto& r : partition_rules(p)) {
        if (!script_.uses || r.primitive || script_.uses->count(r.name)) db_.add(std::move(r));
      }
    }
    builtin_names_ = builtins.names();
  }

  CheckReport run() {
    CheckReport rep;
    if (auto f = declare_hypotheses()) return fail(rep, *f);
    for (const auto& lemma : script_.lemmas) {
      if (db_.contains(lemma.name) || facts_.count(lemma.name)) {
        return fail(rep, {FailureKind::duplicate_name, lemma.name, lemma.line,
                          "name '" + lemma.name + "' is already taken"});
      }
      if (auto f = check_lemma(lemma, rep.steps)) return fail(rep, *f);
      ++rep.lemmas;
      db_.add(Rule{lemma.name, RuleKind::lemma, lemma.goal, {}, false});
      facts_[lemma.name] = lemma.goal;
    }
    for (const auto& h : script_.hypotheses) {
      if (!used_.count(h.name)) {
        return fail(rep, {FailureKind::unused_hypothesis, "", h.line,
                          "hypothesis '" + h.name + "' is never used"});
      }
    }
    rep.accepted = true;
    return rep;
  }

 private:
  static CheckReport fail(CheckReport& rep, StepFailure f) {
    rep.accepted = false;
    rep.failure = std::move(f);
    return rep;
  }

  std::optional<StepFailure> declare_hypotheses() {
    for (const auto& h : script_.hypotheses) {
      const bool clash = std::find(builtin_names_.begin(), builtin_names_.end(), h.name) !=
                             builtin_names_.end() ||
                         facts_.count(h.name) || h.name == "pvm" ||
                         h.name == "partition-transform" || h.name == "partition-sum";
      if (clash) {
        return StepFailure{FailureKind::duplicate_name, "", h.line,
                           "hypothesis name '" + h.name + "' is already taken"};
      }
      db_.add(Rule{h.name, RuleKind::hypothesis, h.statement, {}, true});
      facts_[h.name] = h.statement;
    }
    return std::nullopt;
  }

  std::optional<StepFailure> check_lemma(const Lemma& lemma, std::size_t& steps) {
    std::vector<ChainResult> results;
    for (const auto& chain : lemma.chains) {
      ChainResult cr{chain.lines.front().term, chain.lines.front().term, StepRel::eq};
      if (chain.lines.front().step) {
        return StepFailure{FailureKind::parse_error, lemma.name, chain.lines.front().line,
                           "the first line of a chain takes no justification"};
      }
      for (std::size_t i = 1; i < chain.lines.size(); ++i) {
        const auto& ln = chain.lines[i];
        if (!ln.step) {
          return StepFailure{FailureKind::parse_error, lemma.name, ln.line,
                             "missing justification for '" + print_expr(ln.term) + "'"};
        }
        if (script_.uses && !db_.contains(ln.step->rule)) {
          for (const auto& b : builtin_names_) {
            if (b == ln.step->rule) {
              return StepFailure{FailureKind::forbidden_rule, lemma.name, ln.line,
                                 "rule '" + b + "' is not listed under 'uses'"};
            }
          }
        }
        auto out = check_step(db_, chain.lines[i - 1].term, ln.term, *ln.step, facts_);
        if (!out.ok) {
          StepFailure f = *out.failure;
          f.lemma = lemma.name;
          f.line = ln.line;
          return f;
        }
        used_.insert(out.cited.begin(), out.cited.end());
        ++steps;
        if (out.relation != StepRel::eq) {
          if (cr.relation != StepRel::eq && cr.relation != out.relation) {
            return StepFailure{FailureKind::mixed_chain, lemma.name, ln.line,
                               "chain mixes <= and >= steps"};
          }
          cr.relation = out.relation;
        }
        cr.end = ln.term;
      }
      results.push_back(cr);
    }
    return check_goal(lemma, results);
  }

  static std::optional<StepFailure> check_goal(const Lemma& lemma,
                                               const std::vector<ChainResult>& results) {
    const Expr& l = lemma.goal.lhs;
    const Expr& r = lemma.goal.rhs;
    bool le = false, ge = false;  // l <= r, r <= l
    for (const auto& c : results) {
      const bool forward = c.start == l && c.end == r;
      const bool backward = c.start == r && c.end == l;
      if (!forward && !backward) {
        return StepFailure{FailureKind::goal_mismatch, lemma.name,
                           lemma.line, "chain from '" + print_expr(c.start) + "' to '" +
                                           print_expr(c.end) + "' does not connect the goal sides"};
      }
      const bool up = c.relation == StepRel::eq || (c.relation == StepRel::leq) == forward;
      const bool down = c.relation == StepRel::eq || (c.relation == StepRel::geq) == forward;
      le = le || up;
      ge = ge || down;
    }
    const bool ok = lemma.goal.relation == Relation::eq ? (le && ge) : le;
    if (!ok) {
      return StepFailure{FailureKind::goal_mismatch, lemma.name, lemma.line,
                         "chains do not establish '" + syntax::print_inequation(lemma.goal) + "'"};
    }
    return std::nullopt;
  }

  const ProofScript& script_;
  RuleDB db_;
  Facts facts_;
  std::set<std::string> used_;
  std::vector<std::string> builtin_names_;
};

}  // namespace

CheckReport check_script(const ProofScript& script, const RuleDB& db) {
  return ScriptChecker(script, db).run();
}

CheckReport check_script_text(const std::string& text, const RuleDB& db,
                              const std::string& source) {
  try {
    return check_script(parse_script(text, source), db);
  } catch (const ScriptError& e) {
    CheckReport rep;
    rep.failure = StepFailure{FailureKind::parse_error, "", e.line(), e.what()};
    return rep;
  }
}

}  // namespace nkaq::proof
