#include "nkaq/syntax/expr.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace nkaq::syntax {

struct Expr::Node {
  ExprKind kind;
  std::string name;
  Sort sort;
  std::vector<Expr> kids;
  std::size_t size;
  std::size_t hash;
  bool has_vars;
  bool has_neg;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::shared_ptr<const Expr::Node>& shared_zero();

}  // namespace

Expr Expr::make(ExprKind k, std::string name, Sort sort, std::vector<Expr> kids) {
  std::size_t size = 1;
  std::size_t h = std::hash<int>{}(static_cast<int>(k));
  h = mix(h, std::hash<std::string>{}(name));
  h = mix(h, static_cast<std::size_t>(sort));
  bool vars = k == ExprKind::var;
  bool negs = k == ExprKind::neg;
  for (const auto& c : kids) {
    size += c.size();
    h = mix(h, c.hash());
    vars = vars || c.has_vars();
    negs = negs || c.has_neg();
  }
  auto n = std::make_shared<const Node>(
      Node{k, std::move(name), sort, std::move(kids), size, h, vars, negs});
  return Expr(std::move(n));
}

namespace {
const std::shared_ptr<const Expr::Node>& shared_zero() {
  static const std::shared_ptr<const Expr::Node> z = [] {
    auto n = std::make_shared<const Expr::Node>(Expr::Node{
        ExprKind::zero, "", Sort::action, {}, 1,
        std::hash<int>{}(static_cast<int>(ExprKind::zero)), false, false});
    return n;
  }();
  return z;
}
}  // namespace

Expr::Expr() : node_(shared_zero()) {}
Expr::Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Expr Expr::zero() { return Expr(); }

Expr Expr::one() {
  static const Expr o = make(ExprKind::one, "", Sort::action, {});
  return o;
}

Expr Expr::atom(std::string name, Sort sort) {
  return make(ExprKind::atom, std::move(name), sort, {});
}

Expr Expr::var(std::string name, Sort sort) {
  return make(ExprKind::var, std::move(name), sort, {});
}

Expr Expr::neg(Expr e) { return make(ExprKind::neg, "", Sort::action, {std::move(e)}); }

Expr Expr::star(Expr e) { return make(ExprKind::star, "", Sort::action, {std::move(e)}); }

Expr Expr::sum(std::vector<Expr> operands) {
  std::vector<Expr> flat;
  flat.reserve(operands.size());
  for (auto& o : operands) {
    if (o.is(ExprKind::sum)) {
      flat.insert(flat.end(), o.children().begin(), o.children().end());
    } else {
      flat.push_back(std::move(o));
    }
  }
  if (flat.empty()) return zero();
  if (flat.size() == 1) return flat.front();
  std::stable_sort(flat.begin(), flat.end(),
                   [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  return make(ExprKind::sum, "", Sort::action, std::move(flat));
}

Expr Expr::prod(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (f.is(ExprKind::prod)) {
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return one();
  if (flat.size() == 1) return flat.front();
  return make(ExprKind::prod, "", Sort::action, std::move(flat));
}

ExprKind Expr::kind() const { return node_->kind; }
const std::string& Expr::name() const { return node_->name; }
Sort Expr::sort() const { return node_->sort; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }
std::size_t Expr::size() const { return node_->size; }
std::size_t Expr::hash() const { return node_->hash; }
const void* Expr::identity() const { return node_.get(); }
bool Expr::has_vars() const { return node_->has_vars; }
bool Expr::has_neg() const { return node_->has_neg; }

int compare(const Expr& a, const Expr& b) {
  if (a.identity() == b.identity()) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.sort() != b.sort()) return a.sort() < b.sort() ? -1 : 1;
  const auto& ka = a.children();
  const auto& kb = b.children();
  const std::size_t n = std::min(ka.size(), kb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(ka[i], kb[i]); c != 0) return c;
  }
  if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.identity() == b.identity()) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return compare(a, b) == 0;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::prod({a, b}); }

namespace {

Expr rebuild(const Expr& e, const std::vector<Expr>& kids) {
  switch (e.kind()) {
    case ExprKind::neg: return Expr::neg(kids[0]);
    case ExprKind::star: return Expr::star(kids[0]);
    case ExprKind::sum: return Expr::sum(kids);
    case ExprKind::prod: return Expr::prod(kids);
    default: return e;
  }
}

}  // namespace

Expr canonical(const Expr& e) {
  if (e.children().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.arity());
  for (const auto& c : e.children()) kids.push_back(canonical(c));
  return rebuild(e, kids);
}

Expr substitute(const Expr& e, const Binding& binding) {
  if (e.is(ExprKind::atom) || e.is(ExprKind::var)) {
    auto it = binding.find(e.name());
    return it == binding.end() ? e : it->second;
  }
  if (e.children().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.arity());
  for (const auto& c : e.children()) kids.push_back(substitute(c, binding));
  return rebuild(e, kids);
}

const Expr& subterm(const Expr& e, const Path& p) {
  const Expr* cur = &e;
  for (std::size_t idx : p) {
    if (idx >= cur->arity()) throw std::out_of_range("path leaves the expression tree");
    cur = &cur->child(idx);
  }
  return *cur;
}

Expr replace_at(const Expr& e, const Path& p, const Expr& replacement) {
  std::function<Expr(const Expr&, std::size_t)> go = [&](const Expr& cur, std::size_t depth) {
    if (depth == p.size()) return replacement;
    const std::size_t idx = p[depth];
    if (idx >= cur.arity()) throw std::out_of_range("path leaves the expression tree");
    std::vector<Expr> kids = cur.children();
    kids[idx] = go(cur.child(idx), depth + 1);
    return rebuild(cur, kids);
  };
  return go(e, 0);
}

std::vector<Symbol> atoms_of(const Expr& e) {
  std::map<std::string, Symbol> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (x.is(ExprKind::atom)) seen.emplace(x.name(), Symbol{x.name(), x.sort()});
    for (const auto& c : x.children()) walk(c);
  };
  walk(e);
  std::vector<Symbol> out;
  for (auto& [_, s] : seen) out.push_back(s);
  return out;
}

}  // namespace nkaq::syntax
