#pragma once

#include <optional>
#include <string>

#include "nkaq/hoare/effects.hpp"
#include "nkaq/interp/interpret.hpp"
#include "nkaq/program/encode.hpp"

namespace nkaq::hoare {

using program::Program;
using program::ProgramContext;
using syntax::Expr;
using syntax::Inequation;

struct HoareTriple {
  Matrix pre;
  Program program = Program::skip();
  Matrix post;
};

enum class Verdict { valid, invalid, marginal };
const char* to_string(Verdict v);

struct HoareReport {
  Verdict verdict = Verdict::invalid;
  bool valid = false;          // margin >= -tol
  double margin = 0.0;         // min eigenvalue of (I - A) - [[P]]^dagger(I - B)
  double worst_trace = 0.0;    // largest tr(A rho) - tr(B P(rho)) - tr(rho) + tr(P(rho)) over samples
  bool samples_agree = false;  // the sampled trace check reaches the same verdict
  std::size_t loop_terms = 0;
};

// Dual Loewner check [[P]]^dagger(I - B) <= I - A, cross-checked against
// the defining trace inequality on `samples` random states (half of them
// pure). Margins inside (-tol, tol) are Marginal. Throws
// program::NonConvergent when a loop sum diverges.
HoareReport hoare_valid(const HoareTriple& t, const ProgramContext& ctx, double tol, quantum::Rng& rng,
                        int samples = 50, const quantum::StarPolicy& policy = {});

// Enc(P) ~b <= ~a. The effect terms are arbitrary effect expressions; a
// compound term such as m0 a + m1 b stays under a single negation.
Inequation encode_triple(const Program& p, const program::EncoderSetting& enc, const Expr& pre,
                         const Expr& post);

// The triple's own effects as terms: I becomes 1, O becomes 0, anything
// else the given effect atom.
Expr effect_term(const Matrix& a, const std::string& symbol, double tol = quantum::kDefaultTol);
Inequation encode_triple(const HoareTriple& t, const ProgramContext& ctx, const program::EncoderSetting& enc,
                         const std::string& pre_symbol = "a", const std::string& post_symbol = "b");

// Both sides of an encoded triple (or any effect-valued inequation) under
// the dual interpretation must be constant maps rho -> tr(rho) X; the
// inequation holds when X_lhs <= X_rhs in the Loewner order.
struct DualCheck {
  bool constant = false;  // both sides denote constant maps
  bool holds = false;
  double margin = 0.0;
};
DualCheck dual_effect_leq(const Inequation& q, const interp::InterpretationSetting& s, double tol,
                          const quantum::StarPolicy& policy = {});

// Program container keys plus
//   "pre": matrix, "post": matrix,
//   "partitions": [{"name": "M", "measurement": "M0", "symbols": ["m0", "m1"]}]
struct TripleFile {
  ProgramContext ctx;
  HoareTriple triple;
  std::vector<PartitionDecl> partitions;
};
TripleFile triple_from_json(const quantum::Json& j);
TripleFile load_triple_file(const std::string& path);

}  // namespace nkaq::hoare
