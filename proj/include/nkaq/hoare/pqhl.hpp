#pragma once

#include <array>
#include <string>
#include <vector>

#include "nkaq/hoare/triple.hpp"

namespace nkaq::hoare {

enum class PqhlRule { skip, abort, order, if_, seq, loop };
inline constexpr std::array<PqhlRule, 6> kPqhlRules{PqhlRule::skip, PqhlRule::abort, PqhlRule::order,
                                                    PqhlRule::if_,  PqhlRule::seq,   PqhlRule::loop};

const char* to_string(PqhlRule r);          // "Ax.Sk", "R.LP", ...
std::string corpus_script(PqhlRule r);      // "pqhl_skip.nka", ...

// Concrete data for one rule schema.
//   skip:  effects {A}
//   abort: nothing
//   order: programs {P},        effects {A, A', B', B}
//   seq:   programs {P1, P2},   effects {A, B, C}
//   if:    programs {P_i},      effects {A_i..., B}, one P_i and A_i per outcome in order
//   loop:  programs {P},        effects {A, B}; the loop is while M=1 do P
struct PqhlInstance {
  PqhlRule rule = PqhlRule::skip;
  ProgramContext ctx;
  std::vector<Program> programs;
  std::vector<Matrix> effects;
  std::string measurement;
  std::vector<std::string> regs;
};

struct PqhlCheck {
  bool premises = false;    // every premise holds (triples and Loewner side conditions)
  bool conclusion = false;
  HoareTriple conclusion_triple;
  bool ok() const { return !premises || conclusion; }
};

PqhlCheck pqhl_rule_check(const PqhlInstance& inst, double tol, quantum::Rng& rng);

// Random instance on 1..2 qubits whose premises hold by construction:
// preconditions are liberal preconditions I - [[P]]^dagger(I - B), shrunk
// by a random factor; the loop invariant B is an iterate of its defining
// monotone map started at O.
PqhlInstance random_pqhl_instance(PqhlRule r, quantum::Rng& rng, int qubits);

}  // namespace nkaq::hoare
