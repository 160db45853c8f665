#include "nkaq/suites/criteria.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nkaq/hoare/effects.hpp"
#include "nkaq/hoare/pqhl.hpp"
#include "nkaq/interp/completeness.hpp"
#include "nkaq/normal/normalize.hpp"
#include "nkaq/path/ext_operator_sum.hpp"
#include "nkaq/program/encode.hpp"
#include "nkaq/program/random_program.hpp"
#include "nkaq/proof/checker.hpp"
#include "nkaq/quantum/random.hpp"
#include "nkaq/quantum/transfer.hpp"
#include "nkaq/suites/lemma_instances.hpp"
#include "nkaq/syntax/parser.hpp"

namespace nkaq::suites {

using quantum::Matrix;
using quantum::Rng;
using quantum::Superoperator;

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> corpus_files(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".nka") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const proof::RuleDB& rules() {
  static const proof::RuleDB db = proof::builtin_rules();
  return db;
}

double transfer_distance(const Matrix& a, const Matrix& b) { return quantum::max_abs(Matrix(a - b)); }

// Distance of an inequation lhs <= rhs read as "rhs - lhs is CP".
double leq_defect(const Matrix& lhs, const Matrix& rhs, int dim) {
  return std::max(0.0, -quantum::min_eigenvalue(quantum::choi_of_transfer(rhs - lhs, dim, dim)));
}

Superoperator embed(const program::VariableLayout& layout, const std::vector<Matrix>& kraus,
                    const std::vector<std::string>& regs) {
  std::vector<Matrix> ks;
  for (const auto& k : kraus) ks.push_back(layout.embed(k, regs));
  const int d = layout.total_dim();
  return Superoperator(d, d, std::move(ks));
}

Superoperator embed_unitary(const program::VariableLayout& layout, const Matrix& u,
                            const std::vector<std::string>& regs) {
  return embed(layout, {u}, regs);
}

// reg := |k> as Kraus {|k><j|}.
Superoperator embed_init(const program::VariableLayout& layout, const std::string& reg, int k) {
  const int d = layout.dim_of(reg);
  std::vector<Matrix> ks;
  for (int j = 0; j < d; ++j) ks.push_back(quantum::ket_bra(d, k, j));
  return embed(layout, ks, {reg});
}

}  // namespace

ScriptNumerics script_numerics(const proof::ProofScript& script, const interp::InterpretationSetting& s,
                               const quantum::StarPolicy& policy) {
  ScriptNumerics out;
  out.max_dim = s.dim;
  auto measure = [&](const syntax::Inequation& q) {
    const auto l = interp::interpret(q.lhs, s, policy);
    const auto r = interp::interpret(q.rhs, s, policy);
    if (!l.converged || !r.converged) {
      out.converged = false;
      return 0.0;
    }
    return q.relation == syntax::Relation::eq ? transfer_distance(l.transfer, r.transfer)
                                              : leq_defect(l.transfer, r.transfer, s.dim);
  };
  for (const auto& h : script.hypotheses) out.hypothesis_distance = std::max(out.hypothesis_distance, measure(h.statement));
  for (const auto& l : script.lemmas) out.goal_distance = std::max(out.goal_distance, measure(l.goal));
  return out;
}

interp::InterpretationSetting loop_unroll_setting(Rng& rng) {
  const program::VariableLayout layout({{"q", 2}, {"r", 2}});
  const auto m = quantum::random_projective_measurement(2, 2, rng);
  interp::InterpretationSetting s;
  s.dim = layout.total_dim();
  s.eval.emplace("m0", embed(layout, {m.op(0)}, {"q"}));
  s.eval.emplace("m1", embed(layout, {m.op(1)}, {"q"}));
  s.eval.emplace("p", quantum::random_superop(s.dim, 2, rng));
  return s;
}

interp::InterpretationSetting loop_boundary_setting(Rng& rng) {
  const program::VariableLayout layout({{"w", 2}, {"q", 2}});
  const auto m = quantum::random_projective_measurement(2, 2, rng);
  const Matrix u = quantum::random_unitary(2, rng);
  interp::InterpretationSetting s;
  s.dim = layout.total_dim();
  s.eval.emplace("m0", embed(layout, {m.op(0)}, {"w"}));
  s.eval.emplace("m1", embed(layout, {m.op(1)}, {"w"}));
  s.eval.emplace("u", embed_unitary(layout, u, {"q"}));
  s.eval.emplace("ui", embed_unitary(layout, u.adjoint(), {"q"}));
  s.eval.emplace("p", quantum::random_superop(s.dim, 2, rng));
  return s;
}

// Counter w, ancilla a, signal qubit b. S is the phase gate on a; the
// controlled rotation is diagonal in a's basis, so it commutes with S.
interp::InterpretationSetting qsp_setting(Rng& rng) {
  const program::VariableLayout layout({{"w", 2}, {"a", 2}, {"b", 2}});
  using quantum::Complex;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double theta = angle(rng);
  Matrix rz = Matrix::Zero(2, 2);
  rz(0, 0) = std::polar(1.0, -theta / 2);
  rz(1, 1) = std::polar(1.0, theta / 2);
  Matrix phi = Matrix::Zero(4, 4);
  phi.block(0, 0, 2, 2) = Matrix::Identity(2, 2);
  phi.block(2, 2, 2, 2) = rz;
  Matrix sgate = Matrix::Identity(2, 2);
  sgate(1, 1) = Complex(0, 1);
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1;

  interp::InterpretationSetting s;
  s.dim = layout.total_dim();
  s.eval.emplace("c0", embed_init(layout, "w", 1));
  s.eval.emplace("p0", embed_unitary(layout, quantum::random_unitary(2, rng), {"b"}));
  s.eval.emplace("r0", embed_init(layout, "a", 0));
  s.eval.emplace("m0", embed(layout, {quantum::ket_bra(2, 0, 0)}, {"w"}));
  s.eval.emplace("m1", embed(layout, {quantum::ket_bra(2, 1, 1)}, {"w"}));
  s.eval.emplace("phi", embed_unitary(layout, phi, {"a", "b"}));
  s.eval.emplace("phii", embed_unitary(layout, phi.adjoint(), {"a", "b"}));
  s.eval.emplace("s", embed_unitary(layout, sgate, {"a"}));
  s.eval.emplace("si", embed_unitary(layout, sgate.adjoint(), {"a"}));
  s.eval.emplace("wc", embed_unitary(layout, quantum::random_unitary(2, rng), {"b"}));
  s.eval.emplace("d", embed_unitary(layout, x, {"w"}));
  s.eval.emplace("t0", embed(layout, {quantum::ket_bra(2, 0, 0)}, {"a"}));
  s.eval.emplace("t1", embed(layout, {quantum::ket_bra(2, 1, 1)}, {"a"}));
  return s;
}

CriterionResult criterion_lemma_series(const SuiteConfig& cfg) {
  Timer t;
  LemmaSuiteOptions o;
  o.seed = cfg.seed;
  const auto r = run_lemma_suite(o);
  const auto tot = r.total();
  CriterionResult c{1, "derived formulae agree as series", false, "", 0};
  c.seconds = t.seconds();
  c.passed = tot.series_failures == 0 && tot.premise_failures == 0 && tot.instances == 9 * 200 && c.seconds < 60.0;
  c.detail = std::to_string(tot.instances) + " instances, " + std::to_string(tot.series_failures) +
             " failures, " + std::to_string(tot.exact_checked) + " exact checks, " + fmt(c.seconds) + " s (limit 60)";
  return c;
}

CriterionResult criterion_non_idempotence(const SuiteConfig&) {
  Timer t;
  using series::ExtNat;
  struct Case {
    const char* lhs;
    const char* rhs;
    int L;
    series::Word word;
    ExtNat l;
    ExtNat r;
  };
  const std::vector<Case> cases{
      {"a + a", "a", 1, {"a"}, 2, 1},
      {"1*", "1", 0, {}, ExtNat::infinity(), 1},
      {"(p p)*", "p*", 1, {"p"}, 0, 1},
  };
  CriterionResult c{2, "non-idempotence is observable", true, "", 0};
  for (const auto& k : cases) {
    const auto alpha = syntax::Alphabet::open();
    const auto r = series::bounded_equiv(syntax::parse_expr(k.lhs, alpha), syntax::parse_expr(k.rhs, alpha), k.L);
    const bool ok = !r.equal && r.counterexample && r.counterexample->word == k.word &&
                    r.counterexample->lhs == k.l && r.counterexample->rhs == k.r;
    c.passed = c.passed && ok;
    if (!c.detail.empty()) c.detail += "; ";
    c.detail += std::string(k.lhs) + " vs " + k.rhs + ": ";
    if (r.counterexample) {
      c.detail += "'" + series::word_to_string(r.counterexample->word) + "' " + r.counterexample->lhs.str() +
                  " vs " + r.counterexample->rhs.str();
    } else {
      c.detail += "no counterexample";
    }
  }
  c.seconds = t.seconds();
  return c;
}

CriterionResult criterion_soundness_bridge(const SuiteConfig& cfg) {
  Timer t;
  LemmaSuiteOptions o;
  o.seed = cfg.seed + 1;
  o.settings = 20;
  const auto r = run_lemma_suite(o);
  const auto tot = r.total();
  CriterionResult c{3, "derived formulae hold in random interpretations", false, "", 0};
  c.passed = tot.bridge_failures == 0 && tot.pairs >= 1000;
  c.detail = std::to_string(tot.pairs) + " converged pairs (" + std::to_string(tot.diverged) + " diverged), " +
             std::to_string(tot.bridge_failures) + " disagreements, worst " + fmt(tot.worst_distance) +
             " (tol 1e-8)";
  c.seconds = t.seconds();
  return c;
}

CriterionResult criterion_enc_recovery(const SuiteConfig& cfg) {
  Timer t;
  constexpr double tol = 1e-8;
  Rng rng(cfg.seed + 2);
  std::uniform_int_distribution<int> qubits(1, 3);
  int ok = 0;
  int total = 0;
  double worst = 0.0;
  int loops = 0;
  while (total < 50) {
    program::RandomProgramOptions po;
    po.depth = 2;
    po.qubits = qubits(rng);
    auto rp = program::random_program(rng, po);
    const auto enc = program::EncoderSetting::automatic(rp.program, rp.ctx);
    const auto rep = interp::check_enc_recovery(rp.program, rp.ctx, enc, tol);
    ++total;
    if (rp.program.has_while()) ++loops;
    if (rep.ok) ++ok;
    worst = std::max(worst, rep.distance);
  }
  CriterionResult c{4, "encoding recovers program semantics", ok == total, "", 0};
  c.detail = std::to_string(ok) + "/" + std::to_string(total) + " programs (" + std::to_string(loops) +
             " with loops), worst distance " + fmt(worst) + " (tol 1e-8)";
  c.seconds = t.seconds();
  return c;
}

CriterionResult criterion_optimizations(const SuiteConfig& cfg) {
  Timer t;
  constexpr double tol = 1e-8;
  constexpr int kSettings = 20;
  Rng rng(cfg.seed + 3);
  struct Item {
    const char* file;
    interp::InterpretationSetting (*make)(Rng&);
  };
  const std::vector<Item> items{{"loop_unroll.nka", loop_unroll_setting},
                                {"loop_boundary.nka", loop_boundary_setting},
                                {"qsp.nka", qsp_setting}};
  CriterionResult c{5, "optimization scripts and numeric companions", true, "", 0};
  for (const auto& it : items) {
    const auto path = cfg.corpus_dir + "/" + it.file;
    const auto script = proof::load_script(path);
    const auto rep = proof::check_script(script, rules());
    double hyp = 0.0;
    double goal = 0.0;
    int max_dim = 0;
    bool conv = true;
    for (int k = 0; k < kSettings; ++k) {
      const auto n = script_numerics(script, it.make(rng));
      hyp = std::max(hyp, n.hypothesis_distance);
      goal = std::max(goal, n.goal_distance);
      max_dim = std::max(max_dim, n.max_dim);
      conv = conv && n.converged;
    }
    const bool ok = rep.accepted && conv && hyp < tol && goal < tol && max_dim <= 16;
    c.passed = c.passed && ok;
    if (!c.detail.empty()) c.detail += "; ";
    c.detail += std::string(it.file) + (rep.accepted ? " accepted" : " REJECTED") + ", goal " + fmt(goal) +
                ", hyp " + fmt(hyp) + ", dim " + std::to_string(max_dim);
  }
  c.seconds = t.seconds();
  return c;
}

TwoLoopPair two_loop_pair(Rng& rng, bool pauli_x) {
  TwoLoopPair s;
  s.ctx.layout = program::VariableLayout({{"q", 2}, {"g", 3}});
  s.ctx.measurements.emplace("M1", quantum::random_projective_measurement(2, 2, rng));
  s.ctx.measurements.emplace("M2", quantum::random_projective_measurement(2, 2, rng));
  if (pauli_x) {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1;
    s.ctx.unitaries.emplace("P1", x);
    s.ctx.unitaries.emplace("P2", x);
  } else {
    s.ctx.unitaries.emplace("P1", quantum::random_unitary(2, rng));
    s.ctx.unitaries.emplace("P2", quantum::random_unitary(2, rng));
  }
  s.loops = program::parse_program(
      "while M1[q]=1 do q := P1[q] done; while M2[q]=1 do q := P2[q] done", s.ctx);
  s.original = program::Program::seq(s.loops, program::Program::init("g", 0));
  s.constructed = program::parse_program(
      "g := |1>;"
      "while Meas_gt0[g]=1 do"
      "  if Meas_gt1[g]=1 then (if M2[q]=1 then q := P2[q] else g := |0>)"
      "  else (if M1[q]=1 then q := P1[q] else g := |2>)"
      " done",
      s.ctx);
  return s;
}

// Symbol names used by the normal-form script.
program::EncoderSetting two_loop_encoder(const TwoLoopPair& s) {
  const std::map<std::string, std::string> names{
      {"M1[q]#1", "m11"},       {"M1[q]#0", "m10"},       {"M2[q]#1", "m21"},       {"M2[q]#0", "m20"},
      {"P1[q]", "p1"},          {"P2[q]", "p2"},          {"g:=|0>", "g0"},         {"g:=|1>", "g1"},
      {"g:=|2>", "g2"},         {"Meas_gt0[g]#1", "gt0"}, {"Meas_gt0[g]#0", "le0"}, {"Meas_gt1[g]#1", "gt1"},
      {"Meas_gt1[g]#0", "le1"},
  };
  auto both = program::Program::seq(s.original, s.constructed);
  return program::EncoderSetting::automatic(both, s.ctx, names);
}

CriterionResult criterion_normal_form(const SuiteConfig& cfg) {
  Timer t;
  constexpr double tol = 1e-8;
  Rng rng(cfg.seed + 4);
  CriterionResult c{6, "single-loop normal form", true, "", 0};

  // The worked pair, numerically, with Pauli X bodies and with random ones.
  double pair_distance = 0.0;
  double nf_distance = 0.0;
  for (bool x : {true, false}) {
    for (int k = 0; k < 5; ++k) {
      const auto s = two_loop_pair(rng, x);
      const auto a = program::denote_transfer(s.original, s.ctx);
      const auto b = program::denote_transfer(s.constructed, s.ctx);
      pair_distance = std::max(pair_distance, transfer_distance(a.transfer, b.transfer));
      const auto nf = normal::normalize_program(s.loops, s.ctx);
      const auto chk = normal::verify_normal_form(s.loops, nf, tol);
      nf_distance = std::max(nf_distance, chk.distance);
      c.passed = c.passed && a.converged && b.converged && chk.ok;
    }
  }
  // The script's final lemma must be the encodings of the pair.
  const auto script = proof::load_script(cfg.corpus_dir + "/normal_form_two_loops.nka");
  const auto rep = proof::check_script(script, rules());
  bool enc_match = false;
  {
    const auto s = two_loop_pair(rng, false);
    const auto enc = two_loop_encoder(s);
    for (const auto& l : script.lemmas) {
      if (l.name == "flatten") {
        enc_match = l.goal.lhs == program::encode(s.constructed, enc) && l.goal.rhs == program::encode(s.original, enc);
      }
    }
  }
  c.passed = c.passed && pair_distance < tol && rep.accepted && enc_match;

  // Random programs.
  int done = 0;
  int attempts = 0;
  int max_dim = 0;
  int too_large = 0;
  double worst = 0.0;
  bool random_ok = true;
  std::uniform_int_distribution<int> qubits(1, 2);
  while (done < 30 && attempts < 5000) {
    ++attempts;
    program::RandomProgramOptions po;
    po.depth = 2;
    po.qubits = qubits(rng);
    auto rp = program::random_program(rng, po);
    if (!rp.program.has_while()) continue;
    const auto nf = normal::normalize_program(rp.program, rp.ctx);
    const int dim = nf.context.layout.total_dim();
    if (dim > 64) {
      ++too_large;
      continue;
    }
    const auto chk = normal::verify_normal_form(rp.program, nf, tol);
    random_ok = random_ok && chk.ok && chk.shape_ok && normal::guard_hygiene(nf, 1e-9);
    worst = std::max(worst, chk.distance);
    max_dim = std::max(max_dim, dim);
    ++done;
  }
  c.seconds = t.seconds();
  c.passed = c.passed && random_ok && done == 30 && c.seconds < 300.0;
  c.detail = "pair distance " + fmt(pair_distance) + ", normal form of pair " + fmt(nf_distance) + ", script " +
             (rep.accepted ? "accepted" : "REJECTED") + ", encodings " + (enc_match ? "match" : "DIFFER") + "; " +
             std::to_string(done) + " random programs, worst " + fmt(worst) + ", max dim " +
             std::to_string(max_dim) + " (" + std::to_string(too_large) + " skipped above 64), " + fmt(c.seconds) + " s";
  return c;
}

CriterionResult criterion_completeness(const SuiteConfig& cfg) {
  Timer t;
  constexpr double tol = 1e-9;
  Rng rng(cfg.seed + 5);
  const std::vector<std::string> sigma{"a", "b"};
  const auto cs = interp::completeness_setting(sigma, 3);
  RandomExprOptions eo;
  eo.alphabet = sigma;
  eo.depth = 3;
  eo.proper_epsilon_free = false;
  std::uniform_int_distribution<std::size_t> start(0, cs.strings.size() - 1);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  int exprs = 0;
  int checks = 0;
  int failures = 0;
  double worst = 0.0;
  while (exprs < 30) {
    const auto e = random_expr(rng, eo);
    if (!series::is_proper(e)) continue;
    bool finite = true;
    std::vector<std::pair<series::Word, interp::CompletenessReport>> reps;
    for (int k = 0; k < 5 && finite; ++k) {
      const auto s = cs.strings.word(start(rng));
      try {
        reps.emplace_back(s, interp::check_completeness_claim(e, s, weight(rng), cs, tol));
      } catch (const interp::InfiniteCoefficient&) {
        finite = false;
      }
    }
    if (!finite) continue;
    ++exprs;
    for (const auto& [s, r] : reps) {
      ++checks;
      if (!r.ok) ++failures;
      worst = std::max(worst, r.distance);
    }
  }
  CriterionResult c{7, "completeness construction", failures == 0 && checks == 150, "", 0};
  c.detail = std::to_string(exprs) + " expressions, " + std::to_string(checks) + " start strings, " +
             std::to_string(failures) + " failures, worst " + fmt(worst) + " (tol 1e-9)";
  c.seconds = t.seconds();
  return c;
}

namespace {

using path::ExtOperatorSum;
using series::ExtNat;

Matrix random_low_rank_psd(int d, Rng& rng) {
  const int rank = std::uniform_int_distribution<int>(1, d)(rng);
  const Matrix g = quantum::random_gaussian(d, rank, rng);
  return quantum::hermitize(g * g.adjoint() / static_cast<double>(d));
}

ExtNat random_weight(Rng& rng) {
  const int w = std::uniform_int_distribution<int>(0, 4)(rng);
  return w == 0 ? ExtNat::infinity() : ExtNat(static_cast<std::uint64_t>(w));
}

ExtOperatorSum random_sum(int d, Rng& rng) {
  std::vector<path::Term> terms;
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n; ++i) terms.push_back({random_weight(rng), random_low_rank_psd(d, rng)});
  return ExtOperatorSum(d, std::move(terms));
}

// A sum that dominates a: a itself plus fresh terms.
ExtOperatorSum grow(const ExtOperatorSum& a, Rng& rng) { return a.concat(random_sum(a.dim(), rng)); }

}  // namespace

CriterionResult criterion_path_model(const SuiteConfig& cfg) {
  Timer t;
  Rng rng(cfg.seed + 6);
  std::map<std::string, int> fails;
  std::uniform_int_distribution<int> dims(2, 3);
  for (int i = 0; i < 200; ++i) {
    const int d = dims(rng);
    const auto a = random_sum(d, rng);
    const auto b = grow(a, rng);
    const auto c = grow(b, rng);
    const auto x = random_sum(d, rng);
    if (!path::po_leq(a, a)) ++fails["reflexive"];
    if (!path::po_leq(a, b) || !path::po_leq(b, c) || !path::po_leq(a, c)) ++fails["transitive"];
    // Implication form on unrelated draws as well.
    if (path::po_leq(a, x) && path::po_leq(x, c) && !path::po_leq(a, c)) ++fails["transitive"];
    const auto a2 = random_sum(d, rng);
    const auto b2 = grow(a2, rng);
    if (!path::po_leq(a.concat(a2), b.concat(b2))) ++fails["union-monotone"];
    // Weight flattening, with infinity absorbing.
    const Matrix rho = random_low_rank_psd(d, rng);
    const ExtNat n = random_weight(rng);
    const ExtNat m = random_weight(rng);
    const ExtOperatorSum split(d, {{n, rho}, {m, rho}});
    if (!path::po_equiv(split, ExtOperatorSum::single(rho, n + m))) ++fails["weight-flattening"];
    const Matrix sigma = random_low_rank_psd(d, rng);
    const ExtOperatorSum pair(d, {{1, rho}, {1, sigma}});
    if (!path::po_equiv(pair, ExtOperatorSum::single(quantum::hermitize(rho + sigma)))) ++fails["sum-flattening"];
    // Lifting preserves the order.
    const auto e = quantum::random_superop(d, std::uniform_int_distribution<int>(1, 3)(rng), rng);
    if (!path::po_leq(path::lift_apply(e, a), path::lift_apply(e, b))) ++fails["lift-monotone"];
    if (path::po_leq(a, x) && !path::po_leq(path::lift_apply(e, a), path::lift_apply(e, x))) ++fails["lift-monotone"];
  }
  // Infinite multiples of different supports are separated.
  const Matrix p0 = quantum::ket_bra(2, 0, 0);
  const Matrix p1 = quantum::ket_bra(2, 1, 1);
  const Matrix id = quantum::identity(2);
  const auto inf0 = ExtOperatorSum::single(p0, ExtNat::infinity());
  const auto inf1 = ExtOperatorSum::single(p1, ExtNat::infinity());
  const auto infI = ExtOperatorSum::single(id, ExtNat::infinity());
  if (path::po_leq(inf0, inf1) || path::po_leq(inf1, inf0)) ++fails["separation"];
  if (!path::po_leq(inf0, infI) || !path::po_leq(inf1, infI)) ++fails["separation"];
  if (path::po_leq(infI, inf0) || path::po_leq(infI, inf1)) ++fails["separation"];
  if (path::po_equiv(ExtOperatorSum::single(id), infI)) ++fails["separation"];

  CriterionResult c{8, "path-model order facts", fails.empty(), "", 0};
  c.detail = "200 random cases, dims 2-3";
  for (const auto& [k, v] : fails) c.detail += "; " + k + " failed " + std::to_string(v);
  if (fails.empty()) c.detail += "; all laws and separations hold";
  c.seconds = t.seconds();
  return c;
}

CriterionResult criterion_pqhl(const SuiteConfig& cfg) {
  Timer t;
  constexpr double tol = 1e-9;
  Rng rng(cfg.seed + 7);
  CriterionResult c{9, "propositional quantum Hoare logic", true, "", 0};
  int accepted = 0;
  int instances_ok = 0;
  int premises = 0;
  for (auto rule : hoare::kPqhlRules) {
    const auto rep = proof::check_script(proof::load_script(cfg.corpus_dir + "/" + hoare::corpus_script(rule)), rules());
    if (rep.accepted) ++accepted;
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
      const auto inst = hoare::random_pqhl_instance(rule, rng, 1 + i % 2);
      const auto chk = hoare::pqhl_rule_check(inst, tol, rng);
      if (chk.premises) ++premises;
      if (chk.premises && chk.conclusion) ++ok;
    }
    instances_ok += ok;
    if (ok != 100) c.detail += std::string(hoare::to_string(rule)) + " " + std::to_string(ok) + "/100; ";
  }
  const auto laws = hoare::check_effect_laws(rng, 200, tol);
  c.passed = accepted == 6 && instances_ok == 600 && laws.ok();
  c.detail += std::to_string(accepted) + "/6 scripts accepted, " + std::to_string(instances_ok) +
              "/600 rule instances valid (" + std::to_string(premises) + " with premises), effect laws on " +
              std::to_string(laws.cases) + " cases: " + (laws.ok() ? "hold" : "FAIL");
  for (const auto& [k, v] : laws.failures) c.detail += " " + k + "=" + std::to_string(v);
  c.seconds = t.seconds();
  return c;
}

CriterionResult criterion_mutation(const SuiteConfig& cfg) {
  Timer t;
  CriterionResult c{10, "mutation robustness of the corpus", true, "", 0};
  std::size_t mutants = 0;
  std::size_t killed = 0;
  int scripts = 0;
  for (const auto& f : corpus_files(cfg.corpus_dir)) {
    const auto text = read_file(f);
    const auto base = proof::check_script_text(text, rules(), f);
    const auto m = proof::mutation_test(text, rules(), f);
    ++scripts;
    mutants += m.mutants.size();
    killed += m.killed();
    if (!base.accepted || !m.all_killed()) {
      c.passed = false;
      c.detail += std::filesystem::path(f).filename().string() + (base.accepted ? "" : " rejected") + " " +
                  std::to_string(m.killed()) + "/" + std::to_string(m.mutants.size()) + "; ";
    }
  }
  c.passed = c.passed && mutants > 0;
  c.detail += std::to_string(scripts) + " scripts, " + std::to_string(killed) + "/" + std::to_string(mutants) +
              " mutants killed";
  c.seconds = t.seconds();
  return c;
}

const std::vector<std::function<CriterionResult(const SuiteConfig&)>>& all_criteria() {
  static const std::vector<std::function<CriterionResult(const SuiteConfig&)>> list{
      criterion_lemma_series, criterion_non_idempotence, criterion_soundness_bridge, criterion_enc_recovery,
      criterion_optimizations, criterion_normal_form,    criterion_completeness,     criterion_path_model,
      criterion_pqhl,         criterion_mutation,
  };
  return list;
}

}  // namespace nkaq::suites
