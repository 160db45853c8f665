#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nkaq::syntax {

enum class Sort : std::uint8_t { action, effect };

struct Symbol {
  std::string name;
  Sort sort = Sort::action;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// Var nodes only appear in rule schemas; they stand for arbitrary
// subexpressions (or effect-sorted ones) during matching.
// Neg is the NKAT effect negation; it never simplifies on its own.
enum class ExprKind : std::uint8_t { zero, one, atom, var, neg, sum, prod, star };

class Expr {
 public:
  Expr();  // the constant 0

  static Expr zero();
  static Expr one();
  static Expr atom(std::string name, Sort sort = Sort::action);
  static Expr atom(const Symbol& s) { return atom(s.name, s.sort); }
  static Expr var(std::string name, Sort sort = Sort::action);
  static Expr neg(Expr e);
  static Expr star(Expr e);
  // Flattening constructors. A one-element list yields the element itself;
  // an empty sum is 0 and an empty product is 1. Sum operands are sorted by
  // the canonical order but never merged, so a + a keeps both operands.
  static Expr sum(std::vector<Expr> operands);
  static Expr prod(std::vector<Expr> factors);

  ExprKind kind() const;
  bool is(ExprKind k) const { return kind() == k; }
  const std::string& name() const;  // atoms and vars
  Sort sort() const;                // atoms and vars
  const std::vector<Expr>& children() const;
  const Expr& child(std::size_t i) const { return children()[i]; }
  std::size_t arity() const { return children().size(); }

  std::size_t size() const;  // node count
  std::size_t hash() const;
  const void* identity() const;  // stable address for memo tables

  bool has_vars() const;
  bool has_neg() const;

  struct Node;  // opaque; public only so the implementation file can name it

 private:
  explicit Expr(std::shared_ptr<const Node> n);
  static Expr make(ExprKind k, std::string name, Sort sort, std::vector<Expr> kids);
  std::shared_ptr<const Node> node_;
};

// Total order used for canonical sum ordering: node count first, then
// structure (kind, name, sort, children lexicographically).
int compare(const Expr& a, const Expr& b);
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
inline bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

Expr operator+(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);

// Rebuilds bottom-up through the canonicalizing constructors. Values built
// through the public constructors are already canonical, so this is the
// identity on them; it exists for callers that want the guarantee spelled out.
Expr canonical(const Expr& e);

using Binding = std::map<std::string, Expr>;

// Homomorphic replacement of atoms and vars by name.
Expr substitute(const Expr& e, const Binding& binding);

// Subterm addressing by child-index paths over the canonical tree.
using Path = std::vector<std::size_t>;
const Expr& subterm(const Expr& e, const Path& p);
Expr replace_at(const Expr& e, const Path& p, const Expr& replacement);

// Atom names occurring in e (vars excluded), sorted.
std::vector<Symbol> atoms_of(const Expr& e);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

enum class Relation : std::uint8_t { eq, leq };

struct Inequation {
  Expr lhs;
  Expr rhs;
  Relation relation = Relation::eq;

  friend bool operator==(const Inequation& a, const Inequation& b) {
    return a.relation == b.relation && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

struct HornClause {
  std::vector<Inequation> hypotheses;
  Inequation conclusion;
};

}  // namespace nkaq::syntax
