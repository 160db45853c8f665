#include "nkaq/hoare/pqhl.hpp"

#include <stdexcept>

#include "nkaq/program/denote.hpp"
#include "nkaq/program/random_program.hpp"

namespace nkaq::hoare {

using quantum::identity;

const char* to_string(PqhlRule r) {
  switch (r) {
    case PqhlRule::skip: return "Ax.Sk";
    case PqhlRule::abort: return "Ax.Ab";
    case PqhlRule::order: return "R.OR";
    case PqhlRule::if_: return "R.IF";
    case PqhlRule::seq: return "R.SC";
    case PqhlRule::loop: return "R.LP";
  }
  return "?";
}

std::string corpus_script(PqhlRule r) {
  switch (r) {
    case PqhlRule::skip: return "pqhl_skip.nka";
    case PqhlRule::abort: return "pqhl_abort.nka";
    case PqhlRule::order: return "pqhl_order.nka";
    case PqhlRule::if_: return "pqhl_if.nka";
    case PqhlRule::seq: return "pqhl_seq.nka";
    case PqhlRule::loop: return "pqhl_loop.nka";
  }
  return "";
}

namespace {

void need(bool ok, const char* what) {
  if (!ok) throw quantum::DimensionMismatch(std::string("pqhl instance: ") + what);
}

Measurement measurement_of(const PqhlInstance& inst) {
  return inst.ctx.measurement(inst.measurement, inst.ctx.layout.dim_of(inst.regs));
}

// Sum_i M_i^dagger(A_i) with each branch embedded in the full layout.
Matrix dual_sum(const PqhlInstance& inst, const std::vector<Matrix>& per_outcome) {
  const Measurement m = measurement_of(inst);
  const int d = inst.ctx.layout.total_dim();
  Matrix out = Matrix::Zero(d, d);
  std::size_t i = 0;
  for (int k : m.outcomes()) {
    const Matrix op = inst.ctx.layout.embed(m.op(k), inst.regs);
    out += op.adjoint() * per_outcome.at(i++) * op;
  }
  return out;
}

Matrix liberal_pre(const Program& p, const ProgramContext& ctx, const Matrix& post) {
  const int d = ctx.layout.total_dim();
  const auto den = program::denote_transfer(p, ctx);
  if (!den.converged) throw program::NonConvergent(den.loop_terms);
  const auto sem = quantum::superop_of_transfer(den.transfer, d, d);
  return identity(d) - quantum::dual(sem).apply(identity(d) - post);
}

}  // namespace

PqhlCheck pqhl_rule_check(const PqhlInstance& inst, double tol, quantum::Rng& rng) {
  PqhlCheck c;
  const int d = inst.ctx.layout.total_dim();
  const auto& e = inst.effects;
  const auto& ps = inst.programs;
  auto valid = [&](const Matrix& a, const Program& p, const Matrix& b) {
    return hoare_valid(HoareTriple{a, p, b}, inst.ctx, tol, rng).valid;
  };
  switch (inst.rule) {
    case PqhlRule::skip:
      need(e.size() == 1, "skip needs one effect");
      c.premises = true;
      c.conclusion_triple = {e[0], Program::skip(), e[0]};
      break;
    case PqhlRule::abort:
      c.premises = true;
      c.conclusion_triple = {identity(d), Program::abort(), Matrix::Zero(d, d)};
      break;
    case PqhlRule::order:
      need(ps.size() == 1 && e.size() == 4, "order needs one program and four effects");
      c.premises = quantum::loewner_leq(e[0], e[1], tol) && valid(e[1], ps[0], e[2]) &&
                   quantum::loewner_leq(e[2], e[3], tol);
      c.conclusion_triple = {e[0], ps[0], e[3]};
      break;
    case PqhlRule::seq:
      need(ps.size() == 2 && e.size() == 3, "seq needs two programs and three effects");
      c.premises = valid(e[0], ps[0], e[1]) && valid(e[1], ps[1], e[2]);
      c.conclusion_triple = {e[0], Program::seq(ps[0], ps[1]), e[2]};
      break;
    case PqhlRule::if_: {
      const auto outcomes = measurement_of(inst).outcomes();
      need(ps.size() == outcomes.size() && e.size() == ps.size() + 1, "if needs one program and effect per outcome");
      c.premises = true;
      std::map<int, Program> branches;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        c.premises = c.premises && valid(e[i], ps[i], e.back());
        branches.emplace(outcomes[i], ps[i]);
      }
      const std::vector<Matrix> pres(e.begin(), e.end() - 1);
      c.conclusion_triple = {dual_sum(inst, pres), Program::case_(inst.measurement, inst.regs, branches), e.back()};
      break;
    }
    case PqhlRule::loop: {
      need(ps.size() == 1 && e.size() == 2, "loop needs one program and two effects");
      need(measurement_of(inst).outcomes() == std::vector<int>{0, 1}, "loop measurement must have outcomes 0 and 1");
      const Matrix inv = dual_sum(inst, {e[0], e[1]});
      c.premises = valid(e[1], ps[0], inv);
      c.conclusion_triple = {inv, Program::while_(inst.measurement, inst.regs, ps[0]), e[0]};
      break;
    }
  }
  c.conclusion = hoare_valid(c.conclusion_triple, inst.ctx, tol, rng).valid;
  return c;
}

PqhlInstance random_pqhl_instance(PqhlRule r, quantum::Rng& rng, int qubits) {
  PqhlInstance inst;
  inst.rule = r;
  std::vector<program::Register> regs;
  for (int i = 0; i < qubits; ++i) regs.push_back({"q" + std::to_string(i), 2});
  inst.ctx.layout = program::VariableLayout(regs);
  const int d = inst.ctx.layout.total_dim();
  program::RandomProgramOptions opts;
  opts.depth = 1;
  opts.qubits = qubits;
  std::uniform_real_distribution<double> shrink(0.6, 1.0);
  auto program = [&] { return program::random_program_in(inst.ctx, rng, opts); };
  auto effect = [&] { return quantum::random_effect(d, rng); };
  auto measurement = [&](int outcomes) {
    for (int i = 0; i < qubits; ++i) inst.regs.push_back("q" + std::to_string(i));
    inst.measurement = "Mh";
    inst.ctx.measurements.emplace("Mh", quantum::random_projective_measurement(d, outcomes, rng));
  };

  switch (r) {
    case PqhlRule::skip: inst.effects = {effect()}; break;
    case PqhlRule::abort: break;
    case PqhlRule::order: {
      const Program p = program();
      const Matrix b1 = effect();
      const Matrix a1 = shrink(rng) * liberal_pre(p, inst.ctx, b1);
      const Matrix b = b1 + (identity(d) - b1) * (1.0 - shrink(rng));
      inst.programs = {p};
      inst.effects = {shrink(rng) * a1, a1, b1, b};
      break;
    }
    case PqhlRule::seq: {
      const Program p1 = program();
      const Program p2 = program();
      const Matrix c = effect();
      const Matrix b = shrink(rng) * liberal_pre(p2, inst.ctx, c);
      inst.programs = {p1, p2};
      inst.effects = {shrink(rng) * liberal_pre(p1, inst.ctx, b), b, c};
      break;
    }
    case PqhlRule::if_: {
      const int outcomes = std::uniform_int_distribution<int>(2, std::min(3, d))(rng);
      measurement(outcomes);
      const Matrix b = effect();
      for (int i = 0; i < outcomes; ++i) {
        inst.programs.push_back(program());
        inst.effects.push_back(shrink(rng) * liberal_pre(inst.programs.back(), inst.ctx, b));
      }
      inst.effects.push_back(b);
      break;
    }
    case PqhlRule::loop: {
      measurement(2);
      const Program p = program();
      const Matrix a = effect();
      inst.programs = {p};
      Matrix b = Matrix::Zero(d, d);
      const int iterations = std::uniform_int_distribution<int>(1, 8)(rng);
      for (int k = 0; k < iterations; ++k) b = liberal_pre(p, inst.ctx, dual_sum(inst, {a, b}));
      inst.effects = {a, quantum::hermitize(b)};
      break;
    }
  }
  return inst;
}

}  // namespace nkaq::hoare
