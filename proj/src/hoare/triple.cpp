#include "nkaq/hoare/triple.hpp"

#include <limits>

#include "nkaq/program/container.hpp"
#include "nkaq/program/denote.hpp"

namespace nkaq::hoare {

using quantum::identity;
using quantum::max_abs;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::valid: return "Valid";
    case Verdict::invalid: return "Invalid";
    case Verdict::marginal: return "Marginal";
  }
  return "?";
}

HoareReport hoare_valid(const HoareTriple& t, const ProgramContext& ctx, double tol, quantum::Rng& rng,
                        int samples, const quantum::StarPolicy& policy) {
  const int d = ctx.layout.total_dim();
  if (t.pre.rows() != d || t.post.rows() != d) {
    throw quantum::DimensionMismatch("triple effects do not match the program layout");
  }
  const auto den = program::denote_transfer(t.program, ctx, policy);
  if (!den.converged) throw program::NonConvergent(den.loop_terms);
  const auto sem = quantum::superop_of_transfer(den.transfer, d, d);

  HoareReport r;
  r.loop_terms = den.loop_terms;
  const Matrix id = identity(d);
  const Matrix slack = (id - t.pre) - quantum::dual(sem).apply(id - t.post);
  r.margin = quantum::min_eigenvalue(slack);
  r.valid = r.margin >= -tol;
  r.verdict = r.margin >= tol ? Verdict::valid : r.margin <= -tol ? Verdict::invalid : Verdict::marginal;

  r.worst_trace = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Matrix rho;
    if (s % 2 == 0) {
      rho = quantum::random_density(d, rng);
    } else {
      quantum::Vector v = quantum::random_gaussian(d, 1, rng).col(0);
      v.normalize();
      rho = v * v.adjoint();
    }
    const Matrix out = sem.apply(rho);
    const double gap = (t.pre * rho).trace().real() - (t.post * out).trace().real() - rho.trace().real() +
                       out.trace().real();
    r.worst_trace = std::max(r.worst_trace, gap);
  }
  const bool sampled_valid = r.worst_trace <= tol;
  // A sampled violation refutes validity; absence of one only agrees with
  // a verdict that is not clearly invalid.
  r.samples_agree = r.verdict == Verdict::invalid ? !sampled_valid : sampled_valid;
  return r;
}

Inequation encode_triple(const Program& p, const program::EncoderSetting& enc, const Expr& pre,
                         const Expr& post) {
  return Inequation{Expr::prod({program::encode(p, enc), Expr::neg(post)}), Expr::neg(pre),
                    syntax::Relation::leq};
}

Expr effect_term(const Matrix& a, const std::string& symbol, double tol) {
  if (max_abs(a - identity(static_cast<int>(a.rows()))) <= tol) return Expr::one();
  if (max_abs(a) <= tol) return Expr::zero();
  return Expr::atom(symbol, syntax::Sort::effect);
}

Inequation encode_triple(const HoareTriple& t, const ProgramContext& ctx, const program::EncoderSetting& enc,
                         const std::string& pre_symbol, const std::string& post_symbol) {
  (void)ctx;
  return encode_triple(t.program, enc, effect_term(t.pre, pre_symbol), effect_term(t.post, post_symbol));
}

DualCheck dual_effect_leq(const Inequation& q, const interp::InterpretationSetting& s, double tol,
                          const quantum::StarPolicy& policy) {
  DualCheck c;
  const auto lhs = interp::dual_interpret(q.lhs, s, policy);
  const auto rhs = interp::dual_interpret(q.rhs, s, policy);
  const auto a = interp::constant_of_transfer(lhs.transfer, s.dim, tol);
  const auto b = interp::constant_of_transfer(rhs.transfer, s.dim, tol);
  if (!a || !b || !lhs.converged || !rhs.converged) return c;
  c.constant = true;
  if (q.relation == syntax::Relation::eq) {
    c.margin = -max_abs(*a - *b);
    c.holds = c.margin >= -tol;
  } else {
    c.margin = quantum::min_eigenvalue(*b - *a);
    c.holds = c.margin >= -tol;
  }
  return c;
}

TripleFile triple_from_json(const quantum::Json& j) {
  try {
    TripleFile f;
    const auto container = program::container_from_json(j);
    f.ctx = container.ctx;
    f.triple.program = container.program;
    f.triple.pre = quantum::matrix_from_json(j.at("pre"));
    f.triple.post = quantum::matrix_from_json(j.at("post"));
    if (j.contains("partitions")) {
      for (const auto& p : j.at("partitions")) {
        f.partitions.push_back(PartitionDecl{p.at("name").get<std::string>(), p.at("measurement").get<std::string>(),
                                             p.at("symbols").get<std::vector<std::string>>()});
      }
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw quantum::FormatError(std::string("triple file: ") + e.what());
  }
}

TripleFile load_triple_file(const std::string& path) { return triple_from_json(quantum::load_json_file(path)); }

}  // namespace nkaq::hoare
