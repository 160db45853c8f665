#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nkaq/series/series.hpp"

namespace nkaq::series {

using syntax::ExprKind;

std::string word_to_string(const Word& w) {
  if (w.empty()) return "eps";
  bool single = true;
  for (const auto& s : w) single = single && s.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single) out += ' ';
    out += w[i];
  }
  return out;
}

Word parse_word(const std::string& text, const std::vector<std::string>& alphabet) {
  if (text.empty() || text == "eps" || text == "ε") return {};
  auto known = [&](const std::string& s) {
    for (const auto& a : alphabet) {
      if (a == s) return true;
    }
    return false;
  };
  Word w;
  if (text.find(' ') != std::string::npos) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      if (!known(tok)) throw std::invalid_argument("symbol '" + tok + "' not in alphabet");
      w.push_back(tok);
    }
    return w;
  }
  if (known(text)) return {text};
  for (char c : text) {
    std::string s(1, c);
    if (!known(s)) throw std::invalid_argument("cannot split word '" + text + "' over alphabet");
    w.push_back(s);
  }
  return w;
}

namespace {

struct SpanKey {
  const void* node;
  std::size_t part;  // factor offset for products, 0 otherwise
  std::size_t i;
  std::size_t j;
  bool operator==(const SpanKey&) const = default;
};

struct SpanKeyHash {
  std::size_t operator()(const SpanKey& k) const {
    std::size_t h = std::hash<const void*>{}(k.node);
    h = h * 1000003u ^ k.part;
    h = h * 1000003u ^ k.i;
    h = h * 1000003u ^ k.j;
    return h;
  }
};

class CoeffEvaluator {
 public:
  explicit CoeffEvaluator(const Word& w) : w_(w) {}

  ExtNat span(const Expr& e, std::size_t i, std::size_t j) {
    switch (e.kind()) {
      case ExprKind::zero: return 0;
      case ExprKind::one: return i == j ? 1 : 0;
      case ExprKind::atom: return (j == i + 1 && w_[i] == e.name()) ? 1 : 0;
      case ExprKind::var:
      case ExprKind::neg:
        throw std::invalid_argument("series semantics is defined for NKA expressions only");
      default: break;
    }
    const SpanKey key{e.identity(), 0, i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ExtNat r = 0;
    if (e.is(ExprKind::sum)) {
      for (const auto& c : e.children()) r += span(c, i, j);
    } else if (e.is(ExprKind::prod)) {
      r = product_tail(e, 0, i, j);
    } else {
      r = star_span(e, i, j);
    }
    memo_.emplace(key, r);
    return r;
  }

 private:
  // Coefficient of factors[f..] on w[i..j).
  ExtNat product_tail(const Expr& e, std::size_t f, std::size_t i, std::size_t j) {
    if (f + 1 == e.arity()) return span(e.child(f), i, j);
    const SpanKey key{e.identity(), f + 1, i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ExtNat r = 0;
    for (std::size_t m = i; m <= j; ++m) {
      const ExtNat head = span(e.child(f), i, m);
      if (head.is_zero()) continue;
      r += head * product_tail(e, f + 1, m, j);
    }
    memo_.emplace(key, r);
    return r;
  }

  // Star restricted to its epsilon-free part: only nonempty pieces.
  ExtNat proper_star(const Expr& e, std::size_t i, std::size_t j) {
    if (i == j) return 1;
    const SpanKey key{e.identity(), 1, i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ExtNat r = 0;
    for (std::size_t m = i + 1; m <= j; ++m) {
      const ExtNat head = span(e.child(0), i, m);
      if (head.is_zero()) continue;
      r += head * proper_star(e, m, j);
    }
    memo_.emplace(key, r);
    return r;
  }

  ExtNat star_span(const Expr& e, std::size_t i, std::size_t j) {
    const ExtNat eps = span(e.child(0), i, i);
    const ExtNat h = proper_star(e, i, j);
    if (eps.is_zero()) return h;
    return h.is_zero() ? ExtNat(0) : ExtNat::infinity();
  }

  const Word& w_;
  std::unordered_map<SpanKey, ExtNat, SpanKeyHash> memo_;
};

}  // namespace

ExtNat coeff(const Expr& e, const Word& w) {
  CoeffEvaluator ev(w);
  return ev.span(e, 0, w.size());
}

}  // namespace nkaq::series
