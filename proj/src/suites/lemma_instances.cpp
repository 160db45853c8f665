#include "nkaq/suites/lemma_instances.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "nkaq/proof/matcher.hpp"
#include "nkaq/proof/rules.hpp"
#include "nkaq/syntax/parser.hpp"

namespace nkaq::suites {

using syntax::Relation;

namespace {

Expr draw(quantum::Rng& rng, const RandomExprOptions& o, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 2);
  auto atom = [&] {
    return Expr::atom(o.alphabet[std::uniform_int_distribution<std::size_t>(0, o.alphabet.size() - 1)(rng)]);
  };
  switch (pick(rng)) {
    case 0: return std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? Expr::zero() : atom();
    case 1: return std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? Expr::one() : atom();
    case 2: return atom();
    case 3: return Expr::sum({draw(rng, o, depth - 1), draw(rng, o, depth - 1)});
    case 4: {
      Expr left = draw(rng, o, depth - 1);
      return Expr::prod({left, draw(rng, o, depth - 1)});
    }
    default: return Expr::star(draw(rng, o, depth - 1));
  }
}

bool qualifies(const Expr& e) { return series::is_proper(e) && series::coeff(e, {}).is_zero(); }

Expr power(const Expr& e, int k) { return Expr::prod(std::vector<Expr>(static_cast<std::size_t>(k), e)); }

// A nonempty sum of powers r^k, k in {1, 2}.
Expr polynomial(const Expr& r, quantum::Rng& rng) {
  std::vector<Expr> terms;
  const int n = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int i = 0; i < n; ++i) terms.push_back(power(r, std::uniform_int_distribution<int>(1, 2)(rng)));
  return Expr::sum(terms);
}

const proof::RuleDB& library() {
  static const proof::RuleDB db = proof::builtin_rules();
  return db;
}

proof::Rule rule(const std::string& name) {
  const auto rs = library().lookup(name);
  if (rs.size() != 1) throw std::logic_error("library rule '" + name + "' is not unique");
  return rs.front();
}

Inequation instantiate(const Inequation& q, const Binding& b) {
  return Inequation{proof::instantiate(q.lhs, b), proof::instantiate(q.rhs, b), q.relation};
}

}  // namespace

Expr random_expr(quantum::Rng& rng, const RandomExprOptions& opts) {
  if (opts.alphabet.empty()) throw std::invalid_argument("random_expr needs a nonempty alphabet");
  while (true) {
    Expr e = draw(rng, opts, opts.depth);
    if (!opts.proper_epsilon_free || qualifies(e)) return e;
  }
}

const std::vector<std::string>& derived_lemma_names() {
  static const std::vector<std::string> names{"fixed-point", "monotone-star", "product-star",
                                              "sliding",     "denesting",     "positivity",
                                              "unrolling",   "swap-star",     "star-rewrite"};
  return names;
}

LemmaInstance instantiate_lemma(const std::string& name, quantum::Rng& rng, const RandomExprOptions& opts) {
  LemmaInstance inst;
  inst.lemma = name;
  auto fresh = [&] { return random_expr(rng, opts); };
  auto& b = inst.binding;
  std::vector<std::string> statements{name};
  if (name == "fixed-point") statements.push_back("fixed-point-right");
  if (name == "denesting") statements.push_back("denesting-right");

  if (name == "monotone-star") {
    b["p"] = fresh();
    b["q"] = Expr::sum({b["p"], fresh()});
  } else if (name == "swap-star") {
    const Expr r = fresh();
    b["p"] = polynomial(r, rng);
    b["q"] = polynomial(r, rng);
  } else if (name == "star-rewrite") {
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      const Expr x = fresh();
      const Expr y = fresh();
      b["p"] = x;
      b["q"] = Expr::prod({y, x});
      b["r"] = Expr::prod({x, y});
    } else {
      const Expr base = fresh();
      b["p"] = polynomial(base, rng);
      b["q"] = polynomial(base, rng);
      b["r"] = b["q"];
    }
  } else {
    for (const auto& v : {"p", "q"}) b[v] = fresh();
  }

  for (const auto& s : statements) {
    const proof::Rule r = rule(s);
    inst.conclusions.push_back(instantiate(r.statement, b));
    if (s == name) {
      for (const auto& prem : r.premises) inst.premises.push_back(instantiate(prem, b));
    }
  }
  return inst;
}

namespace {

series::BoundedResult bounded(const Inequation& q, int L) {
  return q.relation == Relation::eq ? series::bounded_equiv(q.lhs, q.rhs, L) : series::bounded_leq(q.lhs, q.rhs, L);
}

}  // namespace

SeriesVerdict check_series(const LemmaInstance& inst, int L) {
  SeriesVerdict v;
  for (const auto& p : inst.premises) v.premises_hold = v.premises_hold && bounded(p, L).equal;
  for (const auto& c : inst.conclusions) {
    const auto r = bounded(c, L);
    if (!r.equal) {
      v.bounded_ok = false;
      if (!v.counterexample) v.counterexample = r.counterexample;
    }
    if (c.relation == Relation::eq) {
      const auto x = series::exact_equiv(c.lhs, c.rhs);
      if (x.verdict != series::ExactResult::Verdict::unsupported) {
        v.exact_supported = true;
        v.exact_ok = v.exact_ok && x.verdict == series::ExactResult::Verdict::equal;
      }
    }
  }
  return v;
}

interp::InterpretationSetting random_setting(quantum::Rng& rng, const std::vector<std::string>& alphabet,
                                             int dim, double scale) {
  interp::InterpretationSetting s;
  s.dim = dim;
  const double f = std::sqrt(scale);
  for (const auto& a : alphabet) {
    auto e = quantum::random_superop(dim, std::uniform_int_distribution<int>(1, 3)(rng), rng);
    std::vector<quantum::Matrix> ks;
    for (const auto& k : e.kraus()) ks.push_back(f * k);
    s.eval.emplace(a, quantum::Superoperator(dim, dim, std::move(ks)));
  }
  return s;
}

BridgeVerdict check_interpretation(const LemmaInstance& inst, const interp::InterpretationSetting& s, double tol,
                                   const quantum::StarPolicy& policy) {
  BridgeVerdict v;
  v.converged = true;
  for (const auto& c : inst.conclusions) {
    const auto l = interp::interpret(c.lhs, s, policy);
    const auto r = interp::interpret(c.rhs, s, policy);
    if (!l.converged || !r.converged) {
      v.converged = false;
      continue;
    }
    double d = 0.0;
    if (c.relation == Relation::eq) {
      d = quantum::max_abs(quantum::Matrix(l.transfer - r.transfer));
    } else {
      const auto j = quantum::choi_of_transfer(r.transfer - l.transfer, s.dim, s.dim);
      d = std::max(0.0, -quantum::min_eigenvalue(j));
    }
    v.distance = std::max(v.distance, d);
    v.agree = v.agree && d < tol;
  }
  return v;
}

LemmaTally LemmaSuiteReport::total() const {
  LemmaTally t;
  for (const auto& [_, l] : lemmas) {
    t.instances += l.instances;
    t.series_failures += l.series_failures;
    t.exact_checked += l.exact_checked;
    t.premise_failures += l.premise_failures;
    t.pairs += l.pairs;
    t.diverged += l.diverged;
    t.bridge_failures += l.bridge_failures;
    t.worst_distance = std::max(t.worst_distance, l.worst_distance);
  }
  return t;
}

LemmaSuiteReport run_lemma_suite(const LemmaSuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  LemmaSuiteReport report;
  quantum::Rng rng(opts.seed);
  const RandomExprOptions expr_opts;
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> scale(opts.scale_lo, opts.scale_hi);
  auto note = [&](const std::string& msg) {
    if (report.failures.size() < 20) report.failures.push_back(msg);
  };
  for (const auto& name : derived_lemma_names()) {
    LemmaTally t;
    for (int i = 0; i < opts.instances; ++i) {
      const auto inst = instantiate_lemma(name, rng, expr_opts);
      ++t.instances;
      const auto sv = check_series(inst, opts.length);
      if (!sv.premises_hold) ++t.premise_failures;
      if (sv.exact_supported) ++t.exact_checked;
      if (!sv.bounded_ok || !sv.exact_ok) {
        ++t.series_failures;
        std::ostringstream os;
        os << name << ": " << syntax::print_expr(inst.conclusions.front().lhs) << " vs "
           << syntax::print_expr(inst.conclusions.front().rhs);
        note(os.str());
      }
      for (int k = 0; k < opts.settings; ++k) {
        const auto s = random_setting(rng, expr_opts.alphabet, dim(rng), scale(rng));
        const auto bv = check_interpretation(inst, s, opts.tol);
        if (!bv.converged) {
          ++t.diverged;
          continue;
        }
        ++t.pairs;
        t.worst_distance = std::max(t.worst_distance, bv.distance);
        if (!bv.agree) {
          ++t.bridge_failures;
          note(name + ": interpretation distance " + std::to_string(bv.distance));
        }
      }
    }
    report.lemmas.emplace_back(name, t);
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace nkaq::suites
