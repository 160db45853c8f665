#pragma once

#include <map>
#include <string>

#include "nkaq/program/program.hpp"
#include "nkaq/quantum/json_io.hpp"

namespace nkaq::program {

// {"layout": [{"name": "q", "dim": 2}, ...],
//  "unitaries": {"U": matrix, ...},
//  "measurements": {"M": {"ops": {...}}, ...},
//  "program": "text",
//  "symbols": {"M[q]#1": "m1", ...}}      (optional encoder overrides)
struct ProgramContainer {
  ProgramContext ctx;
  Program program = Program::skip();
  std::map<std::string, std::string> symbols;
};

ProgramContext context_from_json(const quantum::Json& j);
quantum::Json context_to_json(const ProgramContext& ctx);
ProgramContainer container_from_json(const quantum::Json& j);
ProgramContainer load_program_file(const std::string& path);

}  // namespace nkaq::program
