#pragma once

#include <string>
#include <vector>

#include "nkaq/quantum/linalg.hpp"

namespace nkaq::program {

using quantum::Matrix;

struct Register {
  std::string name;
  int dim = 2;
};

// Ordered registers; the global space is their tensor product with the first
// register as the most significant factor.
class VariableLayout {
 public:
  VariableLayout() = default;
  explicit VariableLayout(std::vector<Register> regs);

  const std::vector<Register>& registers() const { return regs_; }
  int total_dim() const;
  bool contains(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws std::out_of_range
  int dim_of(const std::string& name) const { return regs_[index_of(name)].dim; }
  int dim_of(const std::vector<std::string>& names) const;

  VariableLayout append(const Register& r) const;

  // Lift an operator on the listed registers (in list order) to the whole
  // space, acting as identity elsewhere.
  Matrix embed(const Matrix& op, const std::vector<std::string>& names) const;

 private:
  std::vector<Register> regs_;
};

}  // namespace nkaq::program
