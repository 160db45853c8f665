#include "nkaq/program/encode.hpp"

namespace nkaq::program {

using syntax::Expr;

void EncoderSetting::bind(const Elementary& e, const std::string& symbol) {
  const std::string key = e.key();
  if (by_key_.count(key)) throw std::invalid_argument("encoder key '" + key + "' bound twice");
  if (by_symbol_.count(symbol)) throw std::invalid_argument("encoder symbol '" + symbol + "' used twice");
  by_key_[key] = symbol;
  by_symbol_[symbol] = key;
  elements_.emplace(key, e);
}

const std::string& EncoderSetting::symbol(const std::string& key) const {
  const auto it = by_key_.find(key);
  if (it == by_key_.end()) throw MissingEncoderEntry(key);
  return it->second;
}

const std::string* EncoderSetting::key_of(const std::string& symbol) const {
  const auto it = by_symbol_.find(symbol);
  return it == by_symbol_.end() ? nullptr : &it->second;
}

std::string default_symbol(const Elementary& e) {
  std::string rs;
  for (const auto& r : e.regs) rs += "_" + r;
  switch (e.kind) {
    case ElemKind::unitary: return e.name + rs;
    case ElemKind::init: return "init_" + e.name + "_" + std::to_string(e.index);
    case ElemKind::branch: return e.name + rs + "_" + std::to_string(e.index);
  }
  return {};
}

EncoderSetting EncoderSetting::automatic(const Program& p, const ProgramContext& ctx,
                                         const std::map<std::string, std::string>& overrides) {
  EncoderSetting enc;
  const auto elems = elementaries_of(p, ctx);
  for (const auto& e : elems) {
    if (auto it = overrides.find(e.key()); it != overrides.end()) enc.bind(e, it->second);
  }
  for (const auto& e : elems) {
    if (enc.by_key_.count(e.key())) continue;
    std::string s = default_symbol(e);
    while (enc.by_symbol_.count(s)) s += "'";
    enc.bind(e, s);
  }
  return enc;
}

namespace {

Expr branch_atom(const Program& p, int i, const EncoderSetting& enc) {
  return Expr::atom(enc.symbol(Elementary{ElemKind::branch, p.name(), p.regs(), i}.key()));
}

}  // namespace

Expr encode(const Program& p, const EncoderSetting& enc) {
  switch (p.kind()) {
    case StmtKind::skip: return Expr::one();
    case StmtKind::abort: return Expr::zero();
    case StmtKind::init:
      return Expr::atom(enc.symbol(Elementary{ElemKind::init, p.name(), {p.name()}, p.value()}.key()));
    case StmtKind::unitary:
      return Expr::atom(enc.symbol(Elementary{ElemKind::unitary, p.name(), p.regs(), 0}.key()));
    case StmtKind::seq: return Expr::prod({encode(p.first(), enc), encode(p.second(), enc)});
    case StmtKind::case_: {
      std::vector<Expr> terms;
      for (const auto& [i, b] : p.branches()) terms.push_back(Expr::prod({branch_atom(p, i, enc), encode(b, enc)}));
      return Expr::sum(std::move(terms));
    }
    case StmtKind::while_:
      return Expr::prod({Expr::star(Expr::prod({branch_atom(p, 1, enc), encode(p.body(), enc)})),
                         branch_atom(p, 0, enc)});
  }
  throw std::logic_error("unknown statement kind");
}

}  // namespace nkaq::program
