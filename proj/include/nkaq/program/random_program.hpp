#pragma once

#include "nkaq/program/program.hpp"
#include "nkaq/quantum/random.hpp"

namespace nkaq::program {

struct RandomProgramOptions {
  int depth = 2;   // maximal nesting of seq/case/while
  int qubits = 2;  // registers q0, q1, ...
  int max_arity = 2;  // registers touched by one unitary or measurement
  double abort_weight = 0.03;
  double init_weight = 0.15;
  double skip_weight = 0.07;
};

struct RandomProgram {
  ProgramContext ctx;
  Program program = Program::skip();
};

// Fresh layout of qubits with Haar-random unitaries U0, U1, ... and random
// projective two-outcome measurements M0, M1, ... registered in the context.
RandomProgram random_program(quantum::Rng& rng, const RandomProgramOptions& opts);

// Same generator over an existing context; new operators are added to it.
Program random_program_in(ProgramContext& ctx, quantum::Rng& rng, const RandomProgramOptions& opts);

}  // namespace nkaq::program
