#include "nkaq/syntax/parser.hpp"

#include <cctype>

namespace nkaq::syntax {

void Alphabet::declare(const std::string& name, Sort sort) {
  if (!is_identifier(name)) throw std::invalid_argument("not an identifier: '" + name + "'");
  auto [it, inserted] = symbols_.emplace(name, Symbol{name, sort});
  if (!inserted && it->second.sort != sort) {
    throw std::invalid_argument("symbol '" + name + "' redeclared with a different sort");
  }
}

void Alphabet::declare_var(const std::string& name, Sort sort) {
  vars_[name] = Symbol{name, sort};
}

bool Alphabet::contains(const std::string& name) const { return symbols_.count(name) != 0; }

const Symbol* Alphabet::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

const Symbol* Alphabet::find_var(const std::string& name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? nullptr : &it->second;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  }
  return true;
}

namespace {

enum class Tok { ident, zero, one, plus, star, dot, tilde, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    const std::size_t start = i_;
    if (i_ >= src_.size()) return {Tok::end, "", start};
    const unsigned char c = static_cast<unsigned char>(src_[i_]);
    if (std::isalpha(c)) {
      std::size_t j = i_;
      while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) ||
                                 src_[j] == '_' || src_[j] == '\'')) {
        ++j;
      }
      std::string id(src_.substr(i_, j - i_));
      i_ = j;
      return {Tok::ident, id, start};
    }
    if (std::isdigit(c)) {
      std::size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      std::string num(src_.substr(i_, j - i_));
      i_ = j;
      if (num == "0") return {Tok::zero, num, start};
      if (num == "1") return {Tok::one, num, start};
      throw ParseError("numeral '" + num + "' is not a constant (only 0 and 1 are)", start);
    }
    ++i_;
    switch (c) {
      case '+': return {Tok::plus, "+", start};
      case '*': return {Tok::star, "*", start};
      case '.': return {Tok::dot, ".", start};
      case '~': return {Tok::tilde, "~", start};
      case '(': return {Tok::lparen, "(", start};
      case ')': return {Tok::rparen, ")", start};
      case 0xC2:
        // UTF-8 middle dot (C2 B7) and not sign (C2 AC)
        if (i_ < src_.size() && static_cast<unsigned char>(src_[i_]) == 0xB7) {
          ++i_;
          return {Tok::dot, "·", start};
        }
        if (i_ < src_.size() && static_cast<unsigned char>(src_[i_]) == 0xAC) {
          ++i_;
          return {Tok::tilde, "¬", start};
        }
        break;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", start);
  }

 private:
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }
  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, const Alphabet& alpha) : lex_(src), alpha_(alpha) { advance(); }

  Expr parse_all() {
    Expr e = expr();
    if (cur_.kind != Tok::end) throw ParseError("unexpected '" + cur_.text + "'", cur_.pos);
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  bool starts_factor() const {
    switch (cur_.kind) {
      case Tok::ident:
      case Tok::zero:
      case Tok::one:
      case Tok::lparen:
      case Tok::tilde: return true;
      default: return false;
    }
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (cur_.kind == Tok::plus) {
      advance();
      terms.push_back(term());
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    if (!starts_factor()) throw ParseError("expected an expression", cur_.pos);
    std::vector<Expr> factors{factor()};
    for (;;) {
      if (cur_.kind == Tok::dot) {
        advance();
        if (!starts_factor()) throw ParseError("expected a factor after product sign", cur_.pos);
        factors.push_back(factor());
      } else if (starts_factor()) {
        factors.push_back(factor());
      } else {
        break;
      }
    }
    return Expr::prod(std::move(factors));
  }

  Expr factor() {
    if (cur_.kind == Tok::tilde) {
      advance();
      if (!starts_factor()) throw ParseError("expected an operand for negation", cur_.pos);
      return Expr::neg(factor());
    }
    Expr b = base();
    while (cur_.kind == Tok::star) {
      advance();
      b = Expr::star(b);
    }
    return b;
  }

  Expr base() {
    switch (cur_.kind) {
      case Tok::zero: advance(); return Expr::zero();
      case Tok::one: advance(); return Expr::one();
      case Tok::lparen: {
        advance();
        Expr e = expr();
        if (cur_.kind != Tok::rparen) throw ParseError("expected ')'", cur_.pos);
        advance();
        return e;
      }
      case Tok::ident: {
        std::string id = cur_.text;
        advance();
        if (const Symbol* v = alpha_.find_var(id)) return Expr::var(v->name, v->sort);
        if (const Symbol* s = alpha_.find(id)) return Expr::atom(*s);
        if (alpha_.is_open()) return Expr::atom(id, Sort::action);
        throw UndeclaredSymbol(id);
      }
      default: throw ParseError("expected an expression", cur_.pos);
    }
  }

  Lexer lex_;
  const Alphabet& alpha_;
  Token cur_{Tok::end, "", 0};
};

struct RelSplit {
  std::size_t pos;
  std::size_t len;
  std::string rel;
};

RelSplit find_relation(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "<=") == 0) return {i, 2, "<="};
    if (text.compare(i, 2, ">=") == 0) return {i, 2, ">="};
    if (text.compare(i, 3, "≤") == 0) return {i, 3, "<="};
    if (text.compare(i, 3, "≥") == 0) return {i, 3, ">="};
    if (text[i] == '=') return {i, 1, "="};
  }
  throw ParseError("missing relation (=, <=, >=)", text.size());
}

}  // namespace

Expr parse_expr(std::string_view text, const Alphabet& alphabet) {
  Parser p(text, alphabet);
  return p.parse_all();
}

Inequation parse_inequation(std::string_view text, const Alphabet& alphabet) {
  const RelSplit r = find_relation(text);
  Expr lhs = parse_expr(text.substr(0, r.pos), alphabet);
  Expr rhs;
  try {
    rhs = parse_expr(text.substr(r.pos + r.len), alphabet);
  } catch (const ParseError& e) {
    throw ParseError(std::string("right-hand side: ") + e.what(), r.pos + r.len + e.position());
  }
  if (r.rel == "=") return {lhs, rhs, Relation::eq};
  if (r.rel == "<=") return {lhs, rhs, Relation::leq};
  return {rhs, lhs, Relation::leq};
}

}  // namespace nkaq::syntax
