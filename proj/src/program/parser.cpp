#include <cctype>
#include <set>

#include "nkaq/program/program.hpp"

namespace nkaq::program {

namespace {

enum class Tok { ident, integer, sym, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

const std::set<std::string> kKeywords = {"skip", "abort", "case", "while", "if", "then",
                                         "else", "do",   "done",  "end"};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::ident, s.substr(i, j - i), i});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::integer, s.substr(i, j - i), i});
      i = j;
    } else if (s.compare(i, 2, ":=") == 0 || s.compare(i, 2, "->") == 0) {
      out.push_back({Tok::sym, s.substr(i, 2), i});
      i += 2;
    } else if (std::string(";,|>[]{}=()").find(c) != std::string::npos) {
      out.push_back({Tok::sym, std::string(1, c), i});
      ++i;
    } else {
      throw ProgramError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i));
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Program parse_all() {
    Program p = prog();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at(const std::string& t, std::size_t k = 0) const {
    return peek(k).kind != Tok::end && peek(k).text == t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ProgramError("program syntax error: " + msg + " at offset " + std::to_string(peek().pos));
  }
  void expect(const std::string& t) {
    if (!at(t)) fail("expected '" + t + "'");
    ++i_;
  }
  std::string ident() {
    if (peek().kind != Tok::ident || kKeywords.count(peek().text)) fail("expected a name");
    return toks_[i_++].text;
  }
  int integer() {
    if (peek().kind != Tok::integer) fail("expected an integer");
    return std::stoi(toks_[i_++].text);
  }
  std::vector<std::string> regs() {
    std::vector<std::string> r{ident()};
    while (at(",")) {
      ++i_;
      r.push_back(ident());
    }
    return r;
  }

  // A ";" ends the sequence when a case branch label or a closer follows.
  bool sequence_continues() const {
    if (!at(";")) return false;
    if (peek(1).kind == Tok::integer && peek(2).text == "->") return false;
    if (peek(1).kind == Tok::end) return false;
    const std::string& n = peek(1).text;
    return n != "}" && n != "done" && n != ")";
  }

  Program prog() {
    std::vector<Program> parts{stmt()};
    while (sequence_continues()) {
      ++i_;
      parts.push_back(stmt());
    }
    if (at(";") && (peek(1).kind == Tok::end || peek(1).text == "done" || peek(1).text == ")")) ++i_;
    Program acc = parts.back();
    for (std::size_t k = parts.size() - 1; k-- > 0;) acc = Program::seq(parts[k], acc);
    return acc;
  }

  Program branch_stmt() {
    if (at("(")) {
      ++i_;
      Program p = prog();
      expect(")");
      return p;
    }
    return stmt();
  }

  void guard(std::string& meas, std::vector<std::string>& rs) {
    meas = ident();
    expect("[");
    rs = regs();
    expect("]");
  }

  void expect_one() {
    expect("=");
    if (peek().kind != Tok::integer || peek().text != "1") fail("loop and if guards test outcome 1");
    ++i_;
  }

  Program stmt() {
    if (at("skip")) {
      ++i_;
      return Program::skip();
    }
    if (at("abort")) {
      ++i_;
      return Program::abort();
    }
    if (at("(")) {
      ++i_;
      Program p = prog();
      expect(")");
      return p;
    }
    std::string meas;
    std::vector<std::string> rs;
    if (at("case")) {
      ++i_;
      guard(meas, rs);
      expect("{");
      std::map<int, Program> branches;
      while (true) {
        const std::size_t pos = peek().pos;
        const int k = integer();
        expect("->");
        if (branches.count(k)) throw ProgramError("duplicate case outcome at offset " + std::to_string(pos));
        branches.emplace(k, prog());
        if (at(";")) ++i_;
        if (at("}")) break;
      }
      expect("}");
      expect("end");
      return Program::case_(meas, rs, std::move(branches));
    }
    if (at("while")) {
      ++i_;
      guard(meas, rs);
      expect_one();
      expect("do");
      Program body = prog();
      expect("done");
      return Program::while_(meas, rs, body);
    }
    if (at("if")) {
      ++i_;
      guard(meas, rs);
      expect_one();
      expect("then");
      Program t = branch_stmt();
      Program e = Program::skip();
      if (at("else")) {
        ++i_;
        e = branch_stmt();
      }
      return Program::if_(meas, rs, t, e);
    }
    const auto lhs = regs();
    expect(":=");
    if (at("|")) {
      ++i_;
      const int k = integer();
      expect(">");
      if (lhs.size() != 1) fail("initialisation takes a single register");
      return Program::init(lhs[0], k);
    }
    const std::string u = ident();
    expect("[");
    const auto rhs = regs();
    expect("]");
    if (rhs != lhs) fail("unitary must act on the registers it assigns");
    return Program::unitary(u, rhs);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Program parse_program_untyped(const std::string& text) { return Parser(text).parse_all(); }

Program parse_program(const std::string& text, const ProgramContext& ctx) {
  Program p = parse_program_untyped(text);
  typecheck(p, ctx);
  return p;
}

}  // namespace nkaq::program
