#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nkaq/syntax/expr.hpp"

namespace nkaq::proof {

using syntax::Binding;
using syntax::Expr;
using syntax::Path;

// Effect-sorted expressions: effect atoms and vars, negations, 0, sums of
// effects, and products whose last factor is an effect (p·~b in the dual
// composition convention).
bool is_effect_expr(const Expr& e);

std::set<std::string> vars_of(const Expr& e);

// Replaces Var nodes only; atoms are left alone even when a binding shares
// their name. Throws std::out_of_range on an unbound variable.
Expr instantiate(const Expr& pattern, const Binding& b);

// Enumerates every binding extending `b` under which `pattern` equals
// `term` modulo associativity of · and associativity/commutativity of +.
// A variable inside a product or sum absorbs one or more adjacent factors
// (resp. one or more operands); effect-sorted variables bind only effect
// expressions. The callback may return false to stop the enumeration.
using MatchCallback = std::function<bool(const Binding&)>;
void match(const Expr& pattern, const Expr& term, const Binding& b, const MatchCallback& k);
std::vector<Binding> match_all(const Expr& pattern, const Expr& term, const Binding& b = {});

// A place where a pattern may be applied: a whole node, a window of two or
// more adjacent factors of a product node, or a sub-multiset of two or more
// operands of a sum node. `path` addresses the node; `negated` is true when
// the node sits under an odd number of negations.
struct Site {
  Path path;
  Expr focus;
  bool negated = false;
  std::function<Expr(const Expr&)> plug;  // rebuilds the whole term around a replacement
};

class TooManySites : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void for_each_site(const Expr& term, const Expr& pattern, const std::optional<Path>& at,
                   const std::function<void(const Site&)>& visit);

std::string format_path(const Path& p);
Path parse_path(const std::string& text);  // "root" or dot-separated indices

}  // namespace nkaq::proof
