#pragma once

#include <map>
#include <string>
#include <vector>

#include "nkaq/program/program.hpp"
#include "nkaq/quantum/transfer.hpp"

namespace nkaq::program {

using quantum::StarPolicy;
using quantum::Superoperator;

enum class ElemKind { unitary, init, branch };

// An elementary superoperator of a program: a unitary application, an
// initialisation, or one branch of a measurement.
struct Elementary {
  ElemKind kind;
  std::string name;  // unitary or measurement name, or the register for init
  std::vector<std::string> regs;
  int index = 0;  // init value or measurement outcome

  // "U[q1,q2]", "q:=|k>", "M[q]#i"
  std::string key() const;
};

// Elementary superoperators occurring in p (every outcome of each case and
// loop measurement), unique and sorted by key.
std::vector<Elementary> elementaries_of(const Program& p, const ProgramContext& ctx);
Superoperator elementary_superop(const Elementary& e, const ProgramContext& ctx);

class NonConvergent : public std::runtime_error {
 public:
  explicit NonConvergent(std::size_t terms)
      : std::runtime_error("loop semantics did not converge within " + std::to_string(terms) + " terms"),
        terms_(terms) {}
  std::size_t terms() const { return terms_; }

 private:
  std::size_t terms_;
};

struct Denotation {
  quantum::Matrix transfer;  // on the whole layout space
  bool converged = true;
  std::size_t loop_terms = 0;  // largest number of loop terms summed
};

// Transfer-matrix semantics; loops are summed by quantum::geometric_series.
Denotation denote_transfer(const Program& p, const ProgramContext& ctx, const StarPolicy& policy = {});
struct SparseDenotation {
  quantum::SparseMatrix transfer;
  bool converged = true;
  std::size_t loop_terms = 0;
};

// Same semantics with sparse transfers. Programs whose registers are mostly
// classical (guards) stay sparse, which keeps dimension-64 layouts tractable.
SparseDenotation denote_sparse(const Program& p, const ProgramContext& ctx, const StarPolicy& policy = {});

// Kraus form of the dense transfer; throws NonConvergent when a loop sum did not converge.
Superoperator denote(const Program& p, const ProgramContext& ctx, const StarPolicy& policy = {});

}  // namespace nkaq::program
