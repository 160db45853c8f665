#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nkaq/interp/interpret.hpp"
#include "nkaq/quantum/random.hpp"
#include "nkaq/series/series.hpp"

namespace nkaq::suites {

using syntax::Binding;
using syntax::Expr;
using syntax::Inequation;

struct RandomExprOptions {
  std::vector<std::string> alphabet{"a", "b", "c"};
  int depth = 2;
  // Reject draws with a nonzero empty-word coefficient or an improper star,
  // so that starring the result keeps every coefficient finite.
  bool proper_epsilon_free = true;
};

// Uniform over {0, 1, atom, +, ·, *} by depth; with proper_epsilon_free the
// generator redraws until the expression qualifies.
Expr random_expr(quantum::Rng& rng, const RandomExprOptions& opts);

// The nine derivable formulae exercised by the randomized suites, in
// display order: fixed-point, monotone-star, product-star, sliding,
// denesting, positivity, unrolling, swap-star, star-rewrite.
const std::vector<std::string>& derived_lemma_names();

// A lemma instance: the library statement(s) with metavariables replaced.
// Formulae with two displayed forms (fixed-point, denesting) carry both.
// Conditional formulae get bindings built so the premises hold as series:
//   monotone-star  q = p + s
//   swap-star      p and q are sums of powers of one expression
//   star-rewrite   (p, q, r) = (x, y x, x y) or commuting powers with r = q
struct LemmaInstance {
  std::string lemma;
  Binding binding;
  std::vector<Inequation> premises;
  std::vector<Inequation> conclusions;
};

LemmaInstance instantiate_lemma(const std::string& name, quantum::Rng& rng, const RandomExprOptions& opts);

struct SeriesVerdict {
  bool premises_hold = true;  // bounded check of the premises
  bool bounded_ok = true;
  bool exact_supported = false;
  bool exact_ok = true;
  std::optional<series::Counterexample> counterexample;
};

// Bounded check of every premise and conclusion at length L, plus exact
// equivalence for equations on the proper fragment.
SeriesVerdict check_series(const LemmaInstance& inst, int L);

// Atoms of the alphabet mapped to random trace-non-increasing maps with
// Sum K^dagger K scaled by `scale`.
interp::InterpretationSetting random_setting(quantum::Rng& rng, const std::vector<std::string>& alphabet,
                                             int dim, double scale);

struct BridgeVerdict {
  bool converged = false;  // every interpreted side converged
  bool agree = true;       // equations within tol; <= as a CP difference within tol
  double distance = 0.0;   // equations: max-abs transfer difference; <=: -min Choi eigenvalue
};

BridgeVerdict check_interpretation(const LemmaInstance& inst, const interp::InterpretationSetting& s,
                                   double tol, const quantum::StarPolicy& policy = {});

struct LemmaTally {
  int instances = 0;
  int series_failures = 0;
  int exact_checked = 0;
  int premise_failures = 0;  // generator bug if nonzero
  int pairs = 0;             // (instance, setting) pairs with every side converged
  int diverged = 0;
  int bridge_failures = 0;
  double worst_distance = 0.0;
};

struct LemmaSuiteReport {
  std::vector<std::pair<std::string, LemmaTally>> lemmas;
  std::vector<std::string> failures;  // human-readable, capped
  double seconds = 0.0;

  LemmaTally total() const;
};

struct LemmaSuiteOptions {
  std::uint64_t seed = 42;
  int instances = 200;
  int length = 6;
  int settings = 0;  // interpretation settings per instance; 0 skips the bridge
  double tol = 1e-8;
  double scale_lo = 0.25;
  double scale_hi = 0.6;
};

LemmaSuiteReport run_lemma_suite(const LemmaSuiteOptions& opts);

}  // namespace nkaq::suites
