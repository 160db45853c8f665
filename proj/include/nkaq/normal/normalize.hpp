#pragma once

#include <string>
#include <vector>

#include "nkaq/program/denote.hpp"

namespace nkaq::normal {

using program::Program;
using program::ProgramContext;
using program::Register;

// prefix; while loop_measurement[loop_regs]=1 do body done; reset
// where prefix and body are while-free and reset zeroes every guard.
struct NormalFormResult {
  Program prefix = Program::skip();
  std::string loop_measurement;
  std::vector<std::string> loop_regs;
  Program body = Program::skip();
  std::vector<Register> guards;  // appended to the input layout, in order
  Program reset = Program::skip();
  ProgramContext context;        // input context over the extended layout

  Program loop() const;
  Program composed() const;
};

// Structural induction over the program. Guards are fresh classical
// registers named nf0, nf1, ... (skipping names already in the layout).
// A while-free program, and a loop whose body is while-free, are already
// single-loop shapes and are emitted without a new guard level beyond the
// one-valued guard of the base case.
NormalFormResult normalize_program(const Program& p, const ProgramContext& ctx);

struct NormalFormCheck {
  bool ok = false;
  bool shape_ok = false;       // one While, prefix and body while-free
  double distance = 0.0;       // max-abs transfer difference
  std::size_t loop_terms = 0;  // largest loop sum length on either side
};

// Compares P; reset against the normal form on the extended layout, using
// sparse transfers. Throws program::NonConvergent if a loop sum diverges.
NormalFormCheck verify_normal_form(const Program& p, const NormalFormResult& r, double tol,
                                   const quantum::StarPolicy& policy = {});

// Every operation on a guard commutes with every operation on the original
// registers (Kraus operators pairwise, embedded in the extended space), and
// no operation touches both kinds of register.
bool guard_hygiene(const NormalFormResult& r, double tol);

}  // namespace nkaq::normal
