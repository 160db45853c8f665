#include "nkaq/program/container.hpp"

namespace nkaq::program {

using quantum::FormatError;
using quantum::Json;

ProgramContext context_from_json(const Json& j) {
  ProgramContext ctx;
  try {
    std::vector<Register> regs;
    for (const auto& r : j.at("layout")) regs.push_back({r.at("name").get<std::string>(), r.value("dim", 2)});
    ctx.layout = VariableLayout(std::move(regs));
    if (j.contains("unitaries")) {
      for (const auto& [name, m] : j.at("unitaries").items()) ctx.unitaries[name] = quantum::matrix_from_json(m);
    }
    if (j.contains("measurements")) {
      for (const auto& [name, m] : j.at("measurements").items()) {
        ctx.measurements.emplace(name, quantum::measurement_from_json(m));
      }
    }
  } catch (const Json::exception& ex) {
    throw FormatError(std::string("malformed program container: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw FormatError(ex.what());
  }
  return ctx;
}

Json context_to_json(const ProgramContext& ctx) {
  Json layout = Json::array();
  for (const auto& r : ctx.layout.registers()) layout.push_back({{"name", r.name}, {"dim", r.dim}});
  Json us = Json::object();
  for (const auto& [n, m] : ctx.unitaries) us[n] = quantum::matrix_to_json(m);
  Json ms = Json::object();
  for (const auto& [n, m] : ctx.measurements) ms[n] = quantum::measurement_to_json(m);
  return {{"layout", layout}, {"unitaries", us}, {"measurements", ms}};
}

ProgramContainer container_from_json(const Json& j) {
  ProgramContainer c;
  c.ctx = context_from_json(j);
  if (!j.contains("program") || !j.at("program").is_string()) throw FormatError("container needs \"program\" text");
  c.program = parse_program(j.at("program").get<std::string>(), c.ctx);
  if (j.contains("symbols")) {
    for (const auto& [k, v] : j.at("symbols").items()) c.symbols[k] = v.get<std::string>();
  }
  return c;
}

ProgramContainer load_program_file(const std::string& path) {
  return container_from_json(quantum::load_json_file(path));
}

}  // namespace nkaq::program
