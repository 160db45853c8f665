#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nkaq/syntax/expr.hpp"

namespace nkaq::syntax {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class UndeclaredSymbol : public std::runtime_error {
 public:
  explicit UndeclaredSymbol(const std::string& name)
      : std::runtime_error("undeclared symbol '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Symbol table for parsing. Metavariables are declared separately and parse
// to Var nodes. In open mode unknown identifiers are read as action atoms
// (the CLI uses this; proof scripts do not).
class Alphabet {
 public:
  Alphabet() = default;
  static Alphabet open() {
    Alphabet a;
    a.open_ = true;
    return a;
  }

  void declare(const std::string& name, Sort sort = Sort::action);
  void declare_var(const std::string& name, Sort sort = Sort::action);
  bool contains(const std::string& name) const;
  const Symbol* find(const std::string& name) const;
  const Symbol* find_var(const std::string& name) const;
  bool is_open() const { return open_; }

  const std::map<std::string, Symbol>& symbols() const { return symbols_; }

 private:
  std::map<std::string, Symbol> symbols_;
  std::map<std::string, Symbol> vars_;
  bool open_ = false;
};

bool is_identifier(std::string_view s);

// Grammar: expr := term ("+" term)*; term := factor+ (juxtaposition, "·"
// or "."); factor := "~" factor | base "*"*; base := "0" | "1" | ident |
// "(" expr ")". The "~" (or "¬") prefix is the NKAT effect negation.
Expr parse_expr(std::string_view text, const Alphabet& alphabet);

// "lhs = rhs", "lhs <= rhs" (also "≤"), "lhs >= rhs" (stored swapped).
Inequation parse_inequation(std::string_view text, const Alphabet& alphabet);

std::string print_expr(const Expr& e);
std::string print_inequation(const Inequation& q);

}  // namespace nkaq::syntax
