#include "nkaq/program/program.hpp"

#include <algorithm>
#include <cmath>

namespace nkaq::program {

struct Program::Node {
  StmtKind kind;
  std::string name;
  std::vector<std::string> regs;
  int value = 0;
  std::vector<Program> kids;
  std::map<int, Program> branches;
};

namespace {

std::shared_ptr<Program::Node> node(StmtKind k) {
  auto n = std::make_shared<Program::Node>();
  n->kind = k;
  return n;
}

}  // namespace

Program Program::skip() {
  static const Program s(node(StmtKind::skip));
  return s;
}

Program Program::abort() { return Program(node(StmtKind::abort)); }

Program Program::init(std::string reg, int value) {
  auto n = node(StmtKind::init);
  n->name = std::move(reg);
  n->value = value;
  return Program(n);
}

Program Program::unitary(std::string name, std::vector<std::string> regs) {
  auto n = node(StmtKind::unitary);
  n->name = std::move(name);
  n->regs = std::move(regs);
  return Program(n);
}

Program Program::seq(Program first, Program second) {
  auto n = node(StmtKind::seq);
  n->kids = {std::move(first), std::move(second)};
  return Program(n);
}

Program Program::sequence(const std::vector<Program>& parts) {
  std::vector<Program> kept;
  for (const auto& p : parts) {
    if (!p.is(StmtKind::skip)) kept.push_back(p);
  }
  if (kept.empty()) return skip();
  Program acc = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;) acc = seq(kept[i], acc);
  return acc;
}

Program Program::case_(std::string meas, std::vector<std::string> regs, std::map<int, Program> branches) {
  auto n = node(StmtKind::case_);
  n->name = std::move(meas);
  n->regs = std::move(regs);
  n->branches = std::move(branches);
  return Program(n);
}

Program Program::if_(std::string meas, std::vector<std::string> regs, Program then_branch,
                     Program else_branch) {
  return case_(std::move(meas), std::move(regs), {{0, std::move(else_branch)}, {1, std::move(then_branch)}});
}

Program Program::while_(std::string meas, std::vector<std::string> regs, Program body) {
  auto n = node(StmtKind::while_);
  n->name = std::move(meas);
  n->regs = std::move(regs);
  n->kids = {std::move(body)};
  return Program(n);
}

StmtKind Program::kind() const { return node_->kind; }
const std::string& Program::name() const { return node_->name; }
const std::vector<std::string>& Program::regs() const { return node_->regs; }
int Program::value() const { return node_->value; }
const Program& Program::first() const { return node_->kids.at(0); }
const Program& Program::second() const { return node_->kids.at(1); }
const std::map<int, Program>& Program::branches() const { return node_->branches; }
const Program& Program::body() const { return node_->kids.at(0); }

std::size_t Program::while_count() const {
  std::size_t c = is(StmtKind::while_) ? 1 : 0;
  for (const auto& k : node_->kids) c += k.while_count();
  for (const auto& [i, b] : node_->branches) c += b.while_count();
  return c;
}

bool Program::has_while() const { return while_count() > 0; }

int Program::depth() const {
  int d = -1;
  for (const auto& k : node_->kids) d = std::max(d, k.depth());
  for (const auto& [i, b] : node_->branches) d = std::max(d, b.depth());
  return d + 1;
}

namespace {

bool parse_suffix_int(const std::string& name, const std::string& prefix, int& out) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return false;
  const std::string digits = name.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(), ::isdigit)) return false;
  out = std::stoi(digits);
  return true;
}

}  // namespace

Matrix ProgramContext::unitary(const std::string& name, int dim) const {
  if (auto it = unitaries.find(name); it != unitaries.end()) return it->second;
  using C = quantum::Complex;
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "I") return Matrix::Identity(dim, dim);
  Matrix m(2, 2);
  if (name == "X") {
    m << 0, 1, 1, 0;
  } else if (name == "Y") {
    m << 0, C(0, -1), C(0, 1), 0;
  } else if (name == "Z") {
    m << 1, 0, 0, -1;
  } else if (name == "H") {
    m << r, r, r, -r;
  } else if (name == "S") {
    m << 1, 0, 0, C(0, 1);
  } else if (name == "T") {
    m << 1, 0, 0, C(r, r);
  } else {
    throw ProgramError("unknown unitary '" + name + "'");
  }
  return m;
}

Measurement ProgramContext::measurement(const std::string& name, int dim) const {
  if (auto it = measurements.find(name); it != measurements.end()) return it->second;
  std::map<int, Matrix> ops;
  int k = 0;
  if (name == "Meas") {
    for (int i = 0; i < dim; ++i) ops[i] = quantum::ket_bra(dim, i, i);
  } else if (parse_suffix_int(name, "Meas_gt", k) || parse_suffix_int(name, "Meas_eq", k)) {
    const bool gt = name[5] == 'g';
    ops[0] = Matrix::Zero(dim, dim);
    ops[1] = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const bool hit = gt ? i > k : i == k;
      ops[hit ? 1 : 0](i, i) = 1.0;
    }
  } else {
    throw ProgramError("unknown measurement '" + name + "'");
  }
  return Measurement(std::move(ops), true);
}

namespace {

int regs_dim(const std::vector<std::string>& regs, const ProgramContext& ctx) {
  if (regs.empty()) throw ProgramError("operation needs at least one register");
  for (const auto& r : regs) {
    if (!ctx.layout.contains(r)) throw ProgramError("unknown register '" + r + "'");
  }
  std::vector<std::string> sorted = regs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ProgramError("register listed twice");
  }
  return ctx.layout.dim_of(regs);
}

}  // namespace

void typecheck(const Program& p, const ProgramContext& ctx, double tol) {
  switch (p.kind()) {
    case StmtKind::skip:
    case StmtKind::abort: return;
    case StmtKind::init:
      if (!ctx.layout.contains(p.name())) throw ProgramError("unknown register '" + p.name() + "'");
      if (p.value() < 0 || p.value() >= ctx.layout.dim_of(p.name())) {
        throw ProgramError("basis state |" + std::to_string(p.value()) + "> out of range for " + p.name());
      }
      return;
    case StmtKind::unitary: {
      const int d = regs_dim(p.regs(), ctx);
      const Matrix u = ctx.unitary(p.name(), d);
      if (u.rows() != d || u.cols() != d) {
        throw ProgramError("unitary '" + p.name() + "' has dimension " + std::to_string(u.rows()) +
                           ", registers need " + std::to_string(d));
      }
      if (quantum::max_abs(u.adjoint() * u - Matrix::Identity(d, d)) > std::max(tol, 1e-8)) {
        throw ProgramError("matrix '" + p.name() + "' is not unitary");
      }
      return;
    }
    case StmtKind::seq:
      typecheck(p.first(), ctx, tol);
      typecheck(p.second(), ctx, tol);
      return;
    case StmtKind::case_:
    case StmtKind::while_: {
      const int d = regs_dim(p.regs(), ctx);
      const Measurement m = ctx.measurement(p.name(), d);
      if (m.dim() != d) throw ProgramError("measurement '" + p.name() + "' has the wrong dimension");
      if (!m.complete(std::max(tol, 1e-8))) throw ProgramError("measurement '" + p.name() + "' is not complete");
      const auto outs = m.outcomes();
      if (p.is(StmtKind::while_)) {
        if (outs != std::vector<int>{0, 1}) throw ProgramError("loop measurement must have outcomes {0, 1}");
        typecheck(p.body(), ctx, tol);
        return;
      }
      std::vector<int> have;
      for (const auto& [i, b] : p.branches()) have.push_back(i);
      if (have != outs) throw ProgramError("case on '" + p.name() + "' must list every outcome exactly once");
      for (const auto& [i, b] : p.branches()) typecheck(b, ctx, tol);
      return;
    }
  }
}

namespace {

std::string join_regs(const std::vector<std::string>& regs) {
  std::string s;
  for (std::size_t i = 0; i < regs.size(); ++i) s += (i ? "," : "") + regs[i];
  return s;
}

void print_into(const Program& p, std::string& out) {
  switch (p.kind()) {
    case StmtKind::skip: out += "skip"; break;
    case StmtKind::abort: out += "abort"; break;
    case StmtKind::init: out += p.name() + " := |" + std::to_string(p.value()) + ">"; break;
    case StmtKind::unitary: out += join_regs(p.regs()) + " := " + p.name() + "[" + join_regs(p.regs()) + "]"; break;
    case StmtKind::seq:
      print_into(p.first(), out);
      out += "; ";
      print_into(p.second(), out);
      break;
    case StmtKind::case_: {
      out += "case " + p.name() + "[" + join_regs(p.regs()) + "] { ";
      bool first = true;
      for (const auto& [i, b] : p.branches()) {
        if (!first) out += "; ";
        first = false;
        out += std::to_string(i) + " -> ";
        print_into(b, out);
      }
      out += " } end";
      break;
    }
    case StmtKind::while_:
      out += "while " + p.name() + "[" + join_regs(p.regs()) + "]=1 do ";
      print_into(p.body(), out);
      out += " done";
      break;
  }
}

}  // namespace

std::string print_program(const Program& p) {
  std::string s;
  print_into(p, s);
  return s;
}

}  // namespace nkaq::program
