#include "nkaq/series/extnat.hpp"

#include <limits>
#include <stdexcept>

namespace nkaq::series {

std::uint64_t ExtNat::value() const {
  if (inf_) throw std::logic_error("ExtNat::value() on INF");
  return value_;
}

ExtNat ExtNat::star() const {
  if (is_zero()) return ExtNat(1);
  return infinity();
}

ExtNat operator+(ExtNat a, ExtNat b) {
  if (a.inf_ || b.inf_) return ExtNat::infinity();
  if (a.value_ > std::numeric_limits<std::uint64_t>::max() - b.value_) {
    throw std::overflow_error("ExtNat addition overflow");
  }
  return ExtNat(a.value_ + b.value_);
}

ExtNat operator*(ExtNat a, ExtNat b) {
  if (a.is_zero() || b.is_zero()) return ExtNat(0);
  if (a.inf_ || b.inf_) return ExtNat::infinity();
  if (a.value_ > std::numeric_limits<std::uint64_t>::max() / b.value_) {
    throw std::overflow_error("ExtNat multiplication overflow");
  }
  return ExtNat(a.value_ * b.value_);
}

std::string ExtNat::str() const { return inf_ ? "INF" : std::to_string(value_); }

ExtNat ExtNat::parse(const std::string& s) {
  if (s == "INF" || s == "inf" || s == "∞") return infinity();
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an extended natural: " + s);
  return ExtNat(v);
}

ExtNat extnat_eval(ExtNatOp op, const std::vector<ExtNat>& args) {
  switch (op) {
    case ExtNatOp::add: {
      ExtNat acc(0);
      for (auto a : args) acc += a;
      return acc;
    }
    case ExtNatOp::mul: {
      ExtNat acc(1);
      for (auto a : args) acc *= a;
      return acc;
    }
    case ExtNatOp::star:
      if (args.size() != 1) throw std::invalid_argument("star takes exactly one argument");
      return args[0].star();
  }
  throw std::invalid_argument("unknown ExtNat operation");
}

ExtNat countable_sum(const std::vector<ExtNat>& terms, bool tail_infinitely_nonzero) {
  if (tail_infinitely_nonzero) return ExtNat::infinity();
  ExtNat acc(0);
  for (auto t : terms) acc += t;
  return acc;
}

}  // namespace nkaq::series
