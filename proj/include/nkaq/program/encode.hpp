#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "nkaq/program/denote.hpp"
#include "nkaq/syntax/expr.hpp"

namespace nkaq::program {

class MissingEncoderEntry : public std::runtime_error {
 public:
  explicit MissingEncoderEntry(const std::string& key)
      : std::runtime_error("no encoder symbol for '" + key + "'"), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Injective map from elementary superoperators (by key) to symbol names.
class EncoderSetting {
 public:
  void bind(const Elementary& e, const std::string& symbol);
  const std::string& symbol(const std::string& key) const;  // throws MissingEncoderEntry
  const std::string* key_of(const std::string& symbol) const;
  const std::map<std::string, std::string>& entries() const { return by_key_; }
  const Elementary& elementary(const std::string& key) const { return elements_.at(key); }

  // Covers every elementary superoperator of p. Overrides (key -> symbol)
  // win; the rest get names like X_q, init_q_0, M_q_1.
  static EncoderSetting automatic(const Program& p, const ProgramContext& ctx,
                                  const std::map<std::string, std::string>& overrides = {});

 private:
  std::map<std::string, std::string> by_key_;
  std::map<std::string, std::string> by_symbol_;
  std::map<std::string, Elementary> elements_;
};

std::string default_symbol(const Elementary& e);

// skip -> 1, abort -> 0, P;Q -> Enc(P) Enc(Q), case -> Sum_i m_i Enc(P_i),
// while -> (m1 Enc(P))* m0.
syntax::Expr encode(const Program& p, const EncoderSetting& enc);

}  // namespace nkaq::program
