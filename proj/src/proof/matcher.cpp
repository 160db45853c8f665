#include "nkaq/proof/matcher.hpp"

#include <bit>
#include <cstdint>
#include <sstream>

#include "nkaq/syntax/parser.hpp"

namespace nkaq::proof {

using syntax::ExprKind;
using syntax::Sort;

bool is_effect_expr(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::zero:
    case ExprKind::neg: return true;
    case ExprKind::atom:
    case ExprKind::var: return e.sort() == Sort::effect;
    case ExprKind::prod: return is_effect_expr(e.child(e.arity() - 1));
    case ExprKind::sum:
      for (const auto& c : e.children()) {
        if (!is_effect_expr(c)) return false;
      }
      return true;
    default: return false;
  }
}

std::set<std::string> vars_of(const Expr& e) {
  std::set<std::string> out;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (x.is(ExprKind::var)) out.insert(x.name());
    for (const auto& c : x.children()) walk(c);
  };
  walk(e);
  return out;
}

Expr instantiate(const Expr& pattern, const Binding& b) {
  if (!pattern.has_vars()) return pattern;
  if (pattern.is(ExprKind::var)) {
    auto it = b.find(pattern.name());
    if (it == b.end()) throw std::out_of_range("unbound metavariable '" + pattern.name() + "'");
    return it->second;
  }
  std::vector<Expr> kids;
  kids.reserve(pattern.arity());
  for (const auto& c : pattern.children()) kids.push_back(instantiate(c, b));
  switch (pattern.kind()) {
    case ExprKind::neg: return Expr::neg(kids[0]);
    case ExprKind::star: return Expr::star(kids[0]);
    case ExprKind::sum: return Expr::sum(std::move(kids));
    case ExprKind::prod: return Expr::prod(std::move(kids));
    default: return pattern;
  }
}

namespace {

using Mask = std::uint32_t;
constexpr std::size_t kMaxOperands = 24;

std::vector<Expr> factors_of(const Expr& e) {
  return e.is(ExprKind::prod) ? e.children() : std::vector<Expr>{e};
}
std::vector<Expr> operands_of(const Expr& e) {
  return e.is(ExprKind::sum) ? e.children() : std::vector<Expr>{e};
}

bool sort_ok(const Expr& var, const Expr& value) {
  return var.sort() != Sort::effect || is_effect_expr(value);
}

bool match_rec(const Expr& pat, const Expr& t, const Binding& b, const MatchCallback& k);

bool match_seq(const std::vector<Expr>& pf, std::size_t i, const std::vector<Expr>& tf,
               std::size_t j, const Binding& b, const MatchCallback& k) {
  if (i == pf.size()) return j == tf.size() ? k(b) : true;
  if (j == tf.size()) return true;
  const Expr& p = pf[i];
  const std::size_t reserve = pf.size() - i - 1;
  if (!p.is(ExprKind::var)) {
    return match_rec(p, tf[j], b,
                     [&](const Binding& nb) { return match_seq(pf, i + 1, tf, j + 1, nb, k); });
  }
  if (auto it = b.find(p.name()); it != b.end()) {
    const auto fs = factors_of(it->second);
    if (j + fs.size() > tf.size()) return true;
    for (std::size_t x = 0; x < fs.size(); ++x) {
      if (fs[x] != tf[j + x]) return true;
    }
    return match_seq(pf, i + 1, tf, j + fs.size(), b, k);
  }
  if (tf.size() - j <= reserve) return true;
  const std::size_t max_len = tf.size() - j - reserve;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const Expr value = Expr::prod({tf.begin() + j, tf.begin() + j + len});
    if (!sort_ok(p, value)) continue;
    Binding nb = b;
    nb.emplace(p.name(), value);
    if (!match_seq(pf, i + 1, tf, j + len, nb, k)) return false;
  }
  return true;
}

Expr sum_of_mask(const std::vector<Expr>& ops, Mask m) {
  std::vector<Expr> picked;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (m & (Mask{1} << i)) picked.push_back(ops[i]);
  }
  return Expr::sum(std::move(picked));
}

// Pattern operands are ordered so that structured ones come first; by the
// time a variable is reached, earlier operands may already have bound it.
bool match_bag(const std::vector<Expr>& pops, std::size_t idx, const std::vector<Expr>& tops,
               Mask used, const Binding& b, const MatchCallback& k) {
  const Mask all = tops.size() == 32 ? ~Mask{0} : ((Mask{1} << tops.size()) - 1);
  if (idx == pops.size()) return used == all ? k(b) : true;
  const Expr& p = pops[idx];
  const Mask free = all & ~used;
  if (!p.is(ExprKind::var)) {
    for (std::size_t u = 0; u < tops.size(); ++u) {
      if (!(free & (Mask{1} << u))) continue;
      const bool go = match_rec(p, tops[u], b, [&](const Binding& nb) {
        return match_bag(pops, idx + 1, tops, used | (Mask{1} << u), nb, k);
      });
      if (!go) return false;
    }
    return true;
  }
  if (auto it = b.find(p.name()); it != b.end()) {
    Mask taken = 0;
    for (const auto& want : operands_of(it->second)) {
      bool found = false;
      for (std::size_t u = 0; u < tops.size() && !found; ++u) {
        const Mask bit = Mask{1} << u;
        if ((free & bit) && !(taken & bit) && tops[u] == want) {
          taken |= bit;
          found = true;
        }
      }
      if (!found) return true;
    }
    return match_bag(pops, idx + 1, tops, used | taken, b, k);
  }
  const std::size_t later = pops.size() - idx - 1;
  if (later == 0) {
    if (free == 0) return true;
    const Expr value = sum_of_mask(tops, free);
    if (!sort_ok(p, value)) return true;
    Binding nb = b;
    nb.emplace(p.name(), value);
    return match_bag(pops, idx + 1, tops, all, nb, k);
  }
  for (Mask sub = free; sub != 0; sub = (sub - 1) & free) {
    if (static_cast<std::size_t>(std::popcount(free & ~sub)) < later) continue;
    const Expr value = sum_of_mask(tops, sub);
    if (!sort_ok(p, value)) continue;
    Binding nb = b;
    nb.emplace(p.name(), value);
    if (!match_bag(pops, idx + 1, tops, used | sub, nb, k)) return false;
  }
  return true;
}

bool match_rec(const Expr& pat, const Expr& t, const Binding& b, const MatchCallback& k) {
  switch (pat.kind()) {
    case ExprKind::var: {
      if (auto it = b.find(pat.name()); it != b.end()) return it->second == t ? k(b) : true;
      if (!sort_ok(pat, t)) return true;
      Binding nb = b;
      nb.emplace(pat.name(), t);
      return k(nb);
    }
    case ExprKind::zero:
    case ExprKind::one:
    case ExprKind::atom: return pat == t ? k(b) : true;
    case ExprKind::neg:
    case ExprKind::star:
      if (t.kind() != pat.kind()) return true;
      if (!pat.has_vars()) return pat == t ? k(b) : true;
      return match_rec(pat.child(0), t.child(0), b, k);
    case ExprKind::prod:
      if (!t.is(ExprKind::prod)) return true;
      if (!pat.has_vars()) return pat == t ? k(b) : true;
      return match_seq(pat.children(), 0, t.children(), 0, b, k);
    case ExprKind::sum: {
      if (!t.is(ExprKind::sum)) return true;
      if (!pat.has_vars()) return pat == t ? k(b) : true;
      if (t.arity() > kMaxOperands) throw TooManySites("sum with too many operands to match");
      std::vector<Expr> ordered;
      for (const auto& c : pat.children()) {
        if (!c.is(ExprKind::var)) ordered.push_back(c);
      }
      for (const auto& c : pat.children()) {
        if (c.is(ExprKind::var)) ordered.push_back(c);
      }
      return match_bag(ordered, 0, t.children(), 0, b, k);
    }
  }
  return true;
}

bool top_level_vars(const Expr& p) {
  for (const auto& c : p.children()) {
    if (c.is(ExprKind::var)) return true;
  }
  return false;
}

struct Walker {
  const Expr& root;
  const Expr& pattern;
  const std::optional<Path>& at;
  const std::function<void(const Site&)>& visit;

  void walk(const Expr& node, Path& path, bool negated) {
    if (!at || *at == path) visit_node(node, path, negated);
    if (node.is(ExprKind::neg)) negated = !negated;
    for (std::size_t i = 0; i < node.arity(); ++i) {
      if (at && (path.size() >= at->size() || (*at)[path.size()] != i)) continue;
      path.push_back(i);
      walk(node.child(i), path, negated);
      path.pop_back();
    }
  }

  void visit_node(const Expr& node, const Path& path, bool negated) {
    const bool pvar = pattern.is(ExprKind::var);
    auto plug_whole = [r = root, path](const Expr& x) { return syntax::replace_at(r, path, x); };
    if (pvar || pattern.kind() == node.kind()) visit(Site{path, node, negated, plug_whole});

    const std::size_t n = node.arity();
    if (node.is(ExprKind::prod) && (pvar || pattern.is(ExprKind::prod))) {
      std::size_t lo = 2, hi = n - 1;
      if (!pvar) {
        lo = std::max(lo, pattern.arity());
        if (!top_level_vars(pattern)) hi = std::min(hi, pattern.arity());
      }
      for (std::size_t len = lo; len <= hi; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
          const auto& f = node.children();
          Expr focus = Expr::prod({f.begin() + i, f.begin() + i + len});
          auto plug = [r = root, path, node, i, len](const Expr& x) {
            std::vector<Expr> g(node.children().begin(), node.children().begin() + i);
            g.push_back(x);
            g.insert(g.end(), node.children().begin() + i + len, node.children().end());
            return syntax::replace_at(r, path, Expr::prod(std::move(g)));
          };
          visit(Site{path, focus, negated, plug});
        }
      }
    }
    if (node.is(ExprKind::sum) && (pvar || pattern.is(ExprKind::sum))) {
      if (n > kMaxOperands) throw TooManySites("sum with too many operands to enumerate");
      std::size_t lo = 2, hi = n - 1;
      if (!pvar) {
        lo = std::max(lo, pattern.arity());
        if (!top_level_vars(pattern)) hi = std::min(hi, pattern.arity());
      }
      const Mask all = (Mask{1} << n) - 1;
      for (Mask sub = 1; sub < all; ++sub) {
        const auto cnt = static_cast<std::size_t>(std::popcount(sub));
        if (cnt < lo || cnt > hi) continue;
        Expr focus = sum_of_mask(node.children(), sub);
        auto plug = [r = root, path, node, sub](const Expr& x) {
          std::vector<Expr> rest;
          for (std::size_t i = 0; i < node.arity(); ++i) {
            if (!(sub & (Mask{1} << i))) rest.push_back(node.child(i));
          }
          rest.push_back(x);
          return syntax::replace_at(r, path, Expr::sum(std::move(rest)));
        };
        visit(Site{path, focus, negated, plug});
      }
    }
  }
};

}  // namespace

void match(const Expr& pattern, const Expr& term, const Binding& b, const MatchCallback& k) {
  match_rec(pattern, term, b, k);
}

std::vector<Binding> match_all(const Expr& pattern, const Expr& term, const Binding& b) {
  std::vector<Binding> out;
  match_rec(pattern, term, b, [&](const Binding& nb) {
    out.push_back(nb);
    return true;
  });
  return out;
}

void for_each_site(const Expr& term, const Expr& pattern, const std::optional<Path>& at,
                   const std::function<void(const Site&)>& visit) {
  Walker w{term, pattern, at, visit};
  Path p;
  w.walk(term, p, false);
}

std::string format_path(const Path& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

Path parse_path(const std::string& text) {
  if (text == "root" || text.empty()) return {};
  Path p;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, '.')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed position '" + text + "'");
    }
    p.push_back(static_cast<std::size_t>(std::stoul(part)));
  }
  return p;
}

}  // namespace nkaq::proof
