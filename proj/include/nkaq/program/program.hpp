#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkaq/program/layout.hpp"
#include "nkaq/quantum/superop.hpp"

namespace nkaq::program {

using quantum::Measurement;

enum class StmtKind { skip, abort, init, unitary, seq, case_, while_ };

// Immutable program tree. Unitaries and measurements are referred to by
// name and resolved against a ProgramContext.
class Program {
 public:
  static Program skip();
  static Program abort();
  // reg := |value>; value 0 is the reset statement.
  static Program init(std::string reg, int value = 0);
  static Program unitary(std::string name, std::vector<std::string> regs);
  static Program seq(Program first, Program second);
  // Right-nested sequence of the non-skip statements (skip when none remain).
  static Program sequence(const std::vector<Program>& parts);
  static Program case_(std::string meas, std::vector<std::string> regs, std::map<int, Program> branches);
  // if M[regs]=1 then p else q
  static Program if_(std::string meas, std::vector<std::string> regs, Program then_branch,
                     Program else_branch = skip());
  // while M[regs]=1 do body done; outcome 1 continues, 0 exits.
  static Program while_(std::string meas, std::vector<std::string> regs, Program body);

  StmtKind kind() const;
  bool is(StmtKind k) const { return kind() == k; }
  const std::string& name() const;                 // unitary or measurement name; init register
  const std::vector<std::string>& regs() const;    // unitary, case, while
  int value() const;                               // init
  const Program& first() const;                    // seq
  const Program& second() const;                   // seq
  const std::map<int, Program>& branches() const;  // case
  const Program& body() const;                     // while

  bool has_while() const;
  std::size_t while_count() const;
  int depth() const;  // 0 for elementary statements

  struct Node;

 private:
  explicit Program(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ProgramError : public std::runtime_error {
 public:
  explicit ProgramError(const std::string& what) : std::runtime_error(what) {}
};

// Layout plus named operator tables. Besides the user tables, a few names
// resolve to built-ins sized by their registers:
//   unitaries X, Y, Z, H, S, T (qubits), I (any dim);
//   measurements Meas (computational basis), Meas_gtK (1 iff value > K),
//   Meas_eqK (1 iff value = K).
struct ProgramContext {
  VariableLayout layout;
  std::map<std::string, Matrix> unitaries;
  std::map<std::string, Measurement> measurements;

  Matrix unitary(const std::string& name, int dim) const;
  Measurement measurement(const std::string& name, int dim) const;
};

// Throws ProgramError on unknown registers, unknown operators, dimension
// mismatches, non-unitary matrices, or case/while outcome mismatches.
void typecheck(const Program& p, const ProgramContext& ctx, double tol = quantum::kDefaultTol);

// Statements separated by ";":
//   skip | abort | r := |k> | r1,r2 := U[r1,r2]
//   case M[rs] { i -> prog; j -> prog } end
//   while M[rs]=1 do prog done
//   if M[rs]=1 then stmt [else stmt]     (stmt may be a parenthesised prog)
// The result is typechecked.
Program parse_program(const std::string& text, const ProgramContext& ctx);
Program parse_program_untyped(const std::string& text);

std::string print_program(const Program& p);

}  // namespace nkaq::program
