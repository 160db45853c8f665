#include "nkaq/normal/normalize.hpp"

#include <algorithm>
#include <set>

namespace nkaq::normal {

using program::StmtKind;

Program NormalFormResult::loop() const { return Program::while_(loop_measurement, loop_regs, body); }

Program NormalFormResult::composed() const { return Program::sequence({prefix, loop(), reset}); }

namespace {

struct Piece {
  Program prefix = Program::skip();
  std::string meas;
  std::vector<std::string> regs;
  Program body = Program::skip();
};

class Normalizer {
 public:
  explicit Normalizer(const ProgramContext& ctx) : ctx_(ctx) {}

  Piece run(const Program& p) {
    if (!p.has_while()) {
      // P; g:=|0>; while Meas[g]=1 do skip done
      const std::string g = fresh(1);
      return {Program::sequence({p, Program::init(g, 0)}), "Meas_eq1", {g}, Program::skip()};
    }
    switch (p.kind()) {
      case StmtKind::seq: return seq(run(p.first()), run(p.second()));
      case StmtKind::case_: return dispatch(p);
      case StmtKind::while_:
        if (!p.body().has_while()) return {Program::skip(), p.name(), p.regs(), p.body()};
        return loop(p);
      default: break;
    }
    throw program::ProgramError("statement kind without loops cannot contain a loop");
  }

  const ProgramContext& context() const { return ctx_; }
  const std::vector<Register>& guards() const { return guards_; }

 private:
  std::string fresh(int dim) {
    std::string name;
    do {
      name = "nf" + std::to_string(counter_++);
    } while (ctx_.layout.contains(name));
    ctx_.layout = ctx_.layout.append({name, dim});
    guards_.push_back({name, dim});
    return name;
  }

  static Program if_(const std::string& m, const std::vector<std::string>& regs, Program a, Program b) {
    return Program::if_(m, regs, std::move(a), std::move(b));
  }

  // Guard 1 runs the first loop, guard 2 the second, guard 0 exits.
  Piece seq(const Piece& a, const Piece& b) {
    const std::string g = fresh(3);
    Program first = if_(a.meas, a.regs, a.body, Program::sequence({b.prefix, Program::init(g, 2)}));
    Program second = if_(b.meas, b.regs, b.body, Program::init(g, 0));
    return {Program::sequence({a.prefix, Program::init(g, 1)}), "Meas_gt0", {g},
            if_("Meas_eq1", {g}, std::move(first), std::move(second))};
  }

  // Outcome k of the case selects guard value j (1-based, in outcome order).
  Piece dispatch(const Program& p) {
    std::vector<std::pair<int, Piece>> parts;
    for (const auto& [k, b] : p.branches()) parts.emplace_back(k, run(b));
    const std::string g = fresh(static_cast<int>(parts.size()) + 1);
    std::map<int, Program> entry;
    std::map<int, Program> body{{0, Program::skip()}};
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const int v = static_cast<int>(j) + 1;
      const Piece& part = parts[j].second;
      entry.emplace(parts[j].first, Program::sequence({part.prefix, Program::init(g, v)}));
      body.emplace(v, if_(part.meas, part.regs, part.body, Program::init(g, 0)));
    }
    return {Program::case_(p.name(), p.regs(), std::move(entry)), "Meas_gt0", {g},
            Program::case_("Meas", {g}, std::move(body))};
  }

  // Guard 1 tests the outer measurement, guard 2 runs the inner loop.
  Piece loop(const Program& p) {
    const Piece inner = run(p.body());
    const std::string g = fresh(3);
    Program outer = if_(p.name(), p.regs(), Program::sequence({inner.prefix, Program::init(g, 2)}),
                        Program::init(g, 0));
    Program nested = if_(inner.meas, inner.regs, inner.body, Program::init(g, 1));
    return {Program::init(g, 1), "Meas_gt0", {g}, if_("Meas_eq1", {g}, std::move(outer), std::move(nested))};
  }

  ProgramContext ctx_;
  std::vector<Register> guards_;
  int counter_ = 0;
};

}  // namespace

NormalFormResult normalize_program(const Program& p, const ProgramContext& ctx) {
  program::typecheck(p, ctx);
  Normalizer n(ctx);
  const Piece piece = n.run(p);
  NormalFormResult r;
  r.prefix = piece.prefix;
  r.loop_measurement = piece.meas;
  r.loop_regs = piece.regs;
  r.body = piece.body;
  r.guards = n.guards();
  std::vector<Program> resets;
  for (const auto& g : r.guards) resets.push_back(Program::init(g.name, 0));
  r.reset = Program::sequence(resets);
  r.context = n.context();
  program::typecheck(r.composed(), r.context);
  return r;
}

NormalFormCheck verify_normal_form(const Program& p, const NormalFormResult& r, double tol,
                                   const quantum::StarPolicy& policy) {
  NormalFormCheck c;
  c.shape_ok = !r.prefix.has_while() && !r.body.has_while() && r.composed().while_count() == 1;
  const auto lhs = program::denote_sparse(Program::sequence({p, r.reset}), r.context, policy);
  if (!lhs.converged) throw program::NonConvergent(lhs.loop_terms);
  const auto rhs = program::denote_sparse(r.composed(), r.context, policy);
  if (!rhs.converged) throw program::NonConvergent(rhs.loop_terms);
  c.distance = quantum::max_abs(quantum::SparseMatrix(lhs.transfer - rhs.transfer));
  c.loop_terms = std::max(lhs.loop_terms, rhs.loop_terms);
  c.ok = c.shape_ok && c.distance < tol;
  return c;
}

bool guard_hygiene(const NormalFormResult& r, double tol) {
  std::set<std::string> guard_names;
  for (const auto& g : r.guards) guard_names.insert(g.name);
  std::vector<quantum::Superoperator> on_guards, on_rest;
  for (const auto& e : program::elementaries_of(r.composed(), r.context)) {
    const auto n = static_cast<std::size_t>(
        std::count_if(e.regs.begin(), e.regs.end(), [&](const auto& x) { return guard_names.count(x) > 0; }));
    if (n != 0 && n != e.regs.size()) return false;
    (n ? on_guards : on_rest).push_back(program::elementary_superop(e, r.context));
  }
  for (const auto& a : on_guards) {
    for (const auto& b : on_rest) {
      for (const auto& ka : a.kraus()) {
        for (const auto& kb : b.kraus()) {
          if (quantum::max_abs(quantum::Matrix(ka * kb - kb * ka)) > tol) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace nkaq::normal
