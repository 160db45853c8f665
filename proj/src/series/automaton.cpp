#include <deque>
#include <set>

#include "nkaq/series/series.hpp"
#include "nkaq/syntax/parser.hpp"

namespace nkaq::series {

using syntax::ExprKind;

ImproperStar::ImproperStar(const Expr& sub)
    : std::runtime_error("starred subexpression with nonzero epsilon coefficient: " +
                         syntax::print_expr(sub)),
      sub_(sub) {}

Rational WeightedAutomaton::weight(const Word& w) const {
  std::vector<Rational> v = initial;
  for (const auto& s : w) {
    const auto it = transitions.find(s);
    if (it == transitions.end()) return 0;
    std::vector<Rational> next(states);
    for (std::size_t i = 0; i < states; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < states; ++j) next[j] += v[i] * it->second[i][j];
    }
    v = std::move(next);
  }
  Rational acc = 0;
  for (std::size_t i = 0; i < states; ++i) acc += v[i] * final_weights[i];
  return acc;
}

namespace {

const Expr* first_improper(const Expr& e) {
  if (e.is(ExprKind::var) || e.is(ExprKind::neg)) {
    throw std::invalid_argument("series semantics is defined for NKA expressions only");
  }
  for (const auto& c : e.children()) {
    if (const Expr* bad = first_improper(c)) return bad;
  }
  if (e.is(ExprKind::star) && !coeff(e.child(0), {}).is_zero()) return &e.child(0);
  return nullptr;
}

using Weights = std::map<std::size_t, Rational>;

struct Fragment {
  Rational null = 0;
  Weights first;
  Weights last;
};

class Glushkov {
 public:
  Fragment build(const Expr& e) {
    Fragment f;
    switch (e.kind()) {
      case ExprKind::zero: break;
      case ExprKind::one: f.null = 1; break;
      case ExprKind::atom: {
        const std::size_t p = positions_.size() + 1;
        positions_.push_back(e.name());
        f.first[p] = 1;
        f.last[p] = 1;
        break;
      }
      case ExprKind::sum:
        for (const auto& c : e.children()) {
          Fragment g = build(c);
          f.null += g.null;
          for (auto& [p, w] : g.first) f.first[p] += w;
          for (auto& [p, w] : g.last) f.last[p] += w;
        }
        break;
      case ExprKind::prod: {
        f = build(e.child(0));
        for (std::size_t k = 1; k < e.arity(); ++k) {
          Fragment g = build(e.child(k));
          for (const auto& [q, lw] : f.last) {
            for (const auto& [p, fw] : g.first) follow_[{q, p}] += lw * fw;
          }
          Fragment r;
          r.null = f.null * g.null;
          r.first = f.first;
          if (f.null != 0) {
            for (const auto& [p, w] : g.first) r.first[p] += f.null * w;
          }
          r.last = g.last;
          if (g.null != 0) {
            for (const auto& [p, w] : f.last) r.last[p] += w * g.null;
          }
          f = std::move(r);
        }
        break;
      }
      case ExprKind::star: {
        f = build(e.child(0));
        for (const auto& [q, lw] : f.last) {
          for (const auto& [p, fw] : f.first) follow_[{q, p}] += lw * fw;
        }
        f.null = 1;
        break;
      }
      default: break;
    }
    return f;
  }

  WeightedAutomaton finish(const Fragment& top) const {
    WeightedAutomaton a;
    a.states = positions_.size() + 1;
    a.initial.assign(a.states, 0);
    a.initial[0] = 1;
    a.final_weights.assign(a.states, 0);
    a.final_weights[0] = top.null;
    for (const auto& [p, w] : top.last) a.final_weights[p] = w;
    for (const auto& s : std::set<std::string>(positions_.begin(), positions_.end())) {
      a.transitions[s].assign(a.states, std::vector<Rational>(a.states, 0));
    }
    for (const auto& [p, w] : top.first) a.transitions[positions_[p - 1]][0][p] = w;
    for (const auto& [qp, w] : follow_) {
      a.transitions[positions_[qp.second - 1]][qp.first][qp.second] = w;
    }
    return a;
  }

 private:
  std::vector<std::string> positions_;  // symbol of position p at index p-1
  std::map<std::pair<std::size_t, std::size_t>, Rational> follow_;
};

// Row-echelon basis over the rationals; each stored row has a pivot with value 1.
class RationalBasis {
 public:
  // Adds v if it is independent of the current span; returns whether it was.
  bool insert(std::vector<Rational> v) {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot] == 0) continue;
      const Rational c = v[pivot];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * row[i];
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      const Rational c = v[i];
      for (auto& x : v) x /= c;
      rows_.emplace_back(i, std::move(v));
      return true;
    }
    return false;
  }

 private:
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

}  // namespace

bool is_proper(const Expr& e) { return first_improper(e) == nullptr; }

WeightedAutomaton glushkov_automaton(const Expr& e) {
  if (const Expr* bad = first_improper(e)) throw ImproperStar(*bad);
  Glushkov g;
  const Fragment top = g.build(e);
  return g.finish(top);
}

ExactResult exact_equiv(const Expr& e, const Expr& f) {
  if (!is_proper(e) || !is_proper(f)) return {ExactResult::Verdict::unsupported, {}};
  const WeightedAutomaton a = glushkov_automaton(e);
  const WeightedAutomaton b = glushkov_automaton(f);
  const std::size_t n = a.states + b.states;

  // Difference automaton: block-diagonal transitions, initial (alpha_a, -alpha_b).
  std::vector<Rational> init(n), fin(n);
  for (std::size_t i = 0; i < a.states; ++i) {
    init[i] = a.initial[i];
    fin[i] = a.final_weights[i];
  }
  for (std::size_t i = 0; i < b.states; ++i) {
    init[a.states + i] = -b.initial[i];
    fin[a.states + i] = b.final_weights[i];
  }
  const auto alphabet = joint_alphabet(e, f);
  auto step = [&](const std::vector<Rational>& v, const std::string& s) {
    std::vector<Rational> out(n);
    const auto blocks = {std::pair{&a, std::size_t{0}}, std::pair{&b, a.states}};
    for (const auto& [aut, off] : blocks) {
      const auto it = aut->transitions.find(s);
      if (it == aut->transitions.end()) continue;
      for (std::size_t i = 0; i < aut->states; ++i) {
        if (v[off + i] == 0) continue;
        for (std::size_t j = 0; j < aut->states; ++j) {
          out[off + j] += v[off + i] * it->second[i][j];
        }
      }
    }
    return out;
  };
  auto weight = [&](const std::vector<Rational>& v) {
    Rational acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i] * fin[i];
    return acc;
  };

  RationalBasis basis;
  std::deque<std::pair<std::vector<Rational>, Word>> queue;
  if (basis.insert(init)) queue.emplace_back(init, Word{});
  while (!queue.empty()) {
    auto [v, w] = std::move(queue.front());
    queue.pop_front();
    // Every reachable vector is a combination of basis vectors, so checking
    // the basis vectors alone decides whether some word separates the sides.
    if (weight(v) != 0) return {ExactResult::Verdict::distinguished, w};
    for (const auto& s : alphabet) {
      auto next = step(v, s);
      if (basis.insert(next)) {
        Word w2 = w;
        w2.push_back(s);
        queue.emplace_back(std::move(next), std::move(w2));
      }
    }
  }
  return {ExactResult::Verdict::equal, {}};
}

}  // namespace nkaq::series
