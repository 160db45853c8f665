#include "nkaq/syntax/parser.hpp"

namespace nkaq::syntax {

namespace {

void print_into(const Expr& e, std::string& out);

bool is_leaf(const Expr& e) {
  return e.is(ExprKind::zero) || e.is(ExprKind::one) || e.is(ExprKind::atom) ||
         e.is(ExprKind::var);
}

void print_parens(const Expr& e, std::string& out) {
  out += '(';
  print_into(e, out);
  out += ')';
}

void print_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::zero: out += '0'; break;
    case ExprKind::one: out += '1'; break;
    case ExprKind::atom:
    case ExprKind::var: out += e.name(); break;
    case ExprKind::sum:
      for (std::size_t i = 0; i < e.arity(); ++i) {
        if (i) out += " + ";
        print_into(e.child(i), out);
      }
      break;
    case ExprKind::prod:
      for (std::size_t i = 0; i < e.arity(); ++i) {
        if (i) out += ' ';
        const Expr& f = e.child(i);
        if (f.is(ExprKind::sum)) {
          print_parens(f, out);
        } else {
          print_into(f, out);
        }
      }
      break;
    case ExprKind::star: {
      const Expr& b = e.child(0);
      if (is_leaf(b) || b.is(ExprKind::star)) {
        print_into(b, out);
      } else {
        print_parens(b, out);
      }
      out += '*';
      break;
    }
    case ExprKind::neg: {
      const Expr& b = e.child(0);
      out += '~';
      if (b.is(ExprKind::sum) || b.is(ExprKind::prod)) {
        print_parens(b, out);
      } else {
        print_into(b, out);
      }
      break;
    }
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

std::string print_inequation(const Inequation& q) {
  return print_expr(q.lhs) + (q.relation == Relation::eq ? " = " : " <= ") + print_expr(q.rhs);
}

}  // namespace nkaq::syntax
