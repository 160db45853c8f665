#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nkaq/interp/interpret.hpp"
#include "nkaq/quantum/random.hpp"
#include "nkaq/program/encode.hpp"
#include "nkaq/proof/script.hpp"

namespace nkaq::suites {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // one line of numbers backing the verdict
  double seconds = 0.0;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::string corpus_dir = NKAQ_CORPUS_DIR;
};

// Tolerances and sizes are fixed inside each runner; only the seed and the
// corpus location vary.
CriterionResult criterion_lemma_series(const SuiteConfig& cfg);      // 1
CriterionResult criterion_non_idempotence(const SuiteConfig& cfg);   // 2
CriterionResult criterion_soundness_bridge(const SuiteConfig& cfg);  // 3
CriterionResult criterion_enc_recovery(const SuiteConfig& cfg);      // 4
CriterionResult criterion_optimizations(const SuiteConfig& cfg);     // 5
CriterionResult criterion_normal_form(const SuiteConfig& cfg);       // 6
CriterionResult criterion_completeness(const SuiteConfig& cfg);      // 7
CriterionResult criterion_path_model(const SuiteConfig& cfg);        // 8
CriterionResult criterion_pqhl(const SuiteConfig& cfg);              // 9
CriterionResult criterion_mutation(const SuiteConfig& cfg);          // 10

const std::vector<std::function<CriterionResult(const SuiteConfig&)>>& all_criteria();

// Numeric reading of a proof script: every hypothesis and every lemma goal
// interpreted in `s`. Equations compare transfers by max-abs difference;
// inequations report how far the Choi matrix of rhs - lhs is from PSD.
struct ScriptNumerics {
  double hypothesis_distance = 0.0;
  double goal_distance = 0.0;
  bool converged = true;
  int max_dim = 0;
};
ScriptNumerics script_numerics(const proof::ProofScript& script, const interp::InterpretationSetting& s,
                               const quantum::StarPolicy& policy = {});

// Concrete settings for the optimization scripts; each satisfies the
// script's hypotheses.
interp::InterpretationSetting loop_unroll_setting(quantum::Rng& rng);
interp::InterpretationSetting loop_boundary_setting(quantum::Rng& rng);
interp::InterpretationSetting qsp_setting(quantum::Rng& rng);

// The two-loop example on a qubit q and a guard g in {0, 1, 2}: Original
// runs both loops and resets g, Constructed is the hand-written single
// loop. With pauli_x both bodies are X; otherwise two random unitaries.
struct TwoLoopPair {
  program::ProgramContext ctx;
  program::Program original = program::Program::skip();
  program::Program constructed = program::Program::skip();
  program::Program loops = program::Program::skip();  // Original without the reset
};
TwoLoopPair two_loop_pair(quantum::Rng& rng, bool pauli_x);
// Encoder naming the pair's operations as in the normal-form script.
program::EncoderSetting two_loop_encoder(const TwoLoopPair& s);

}  // namespace nkaq::suites
