#include "nkaq/program/layout.hpp"

#include <set>
#include <stdexcept>

namespace nkaq::program {

VariableLayout::VariableLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
  std::set<std::string> seen;
  for (const auto& r : regs_) {
    if (r.dim < 1) throw std::invalid_argument("register '" + r.name + "' needs a positive dimension");
    if (!seen.insert(r.name).second) throw std::invalid_argument("duplicate register '" + r.name + "'");
  }
}

int VariableLayout::total_dim() const {
  int d = 1;
  for (const auto& r : regs_) d *= r.dim;
  return d;
}

bool VariableLayout::contains(const std::string& name) const {
  for (const auto& r : regs_) {
    if (r.name == name) return true;
  }
  return false;
}

std::size_t VariableLayout::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].name == name) return i;
  }
  throw std::out_of_range("unknown register '" + name + "'");
}

int VariableLayout::dim_of(const std::vector<std::string>& names) const {
  int d = 1;
  for (const auto& n : names) d *= dim_of(n);
  return d;
}

VariableLayout VariableLayout::append(const Register& r) const {
  auto regs = regs_;
  regs.push_back(r);
  return VariableLayout(std::move(regs));
}

Matrix VariableLayout::embed(const Matrix& op, const std::vector<std::string>& names) const {
  const int total = total_dim();
  const int sub = dim_of(names);
  if (op.rows() != sub || op.cols() != sub) {
    throw std::invalid_argument("operator dimension does not match its registers");
  }
  std::vector<std::size_t> idx;
  std::set<std::size_t> used;
  for (const auto& n : names) {
    idx.push_back(index_of(n));
    if (!used.insert(idx.back()).second) throw std::invalid_argument("register '" + n + "' listed twice");
  }
  if (sub == total && idx.size() == regs_.size()) {
    bool ordered = true;
    for (std::size_t i = 0; i < idx.size(); ++i) ordered = ordered && idx[i] == i;
    if (ordered) return op;
  }
  // Decompose every global index into digits, then into (selected, rest).
  const std::size_t n = regs_.size();
  std::vector<int> sel_of(total), rest_of(total);
  std::vector<int> digits(n);
  for (int g = 0; g < total; ++g) {
    int x = g;
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = x % regs_[k].dim;
      x /= regs_[k].dim;
    }
    int s = 0;
    for (auto k : idx) s = s * regs_[k].dim + digits[k];
    int r = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!used.count(k)) r = r * regs_[k].dim + digits[k];
    }
    sel_of[g] = s;
    rest_of[g] = r;
  }
  Matrix out = Matrix::Zero(total, total);
  for (int a = 0; a < total; ++a) {
    for (int b = 0; b < total; ++b) {
      if (rest_of[a] == rest_of[b]) out(a, b) = op(sel_of[a], sel_of[b]);
    }
  }
  return out;
}

}  // namespace nkaq::program
