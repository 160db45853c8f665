#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace nkaq::series {

// Extended naturals: 0, 1, 2, ... and a top element INF.
// Finite arithmetic is checked; overflow throws rather than saturating,
// because saturating to INF would silently change the semantics.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : value_(v) {}  // NOLINT(implicit)
  static constexpr ExtNat infinity() {
    ExtNat n;
    n.inf_ = true;
    return n;
  }

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && value_ == 0; }
  std::uint64_t value() const;  // throws on INF

  ExtNat star() const;

  friend ExtNat operator+(ExtNat a, ExtNat b);
  friend ExtNat operator*(ExtNat a, ExtNat b);
  ExtNat& operator+=(ExtNat o) { return *this = *this + o; }
  ExtNat& operator*=(ExtNat o) { return *this = *this * o; }

  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
    return a.value_ <=> b.value_;
  }

  std::string str() const;  // "INF" for infinity
  static ExtNat parse(const std::string& s);

 private:
  std::uint64_t value_ = 0;
  bool inf_ = false;
};

enum class ExtNatOp { add, mul, star };

// Table-driven evaluation; star takes one argument, add/mul fold any count.
ExtNat extnat_eval(ExtNatOp op, const std::vector<ExtNat>& args);

// Sum of a countable family given by a finite list of explicit terms plus a
// flag saying whether the (unlisted) tail has infinitely many nonzero terms.
ExtNat countable_sum(const std::vector<ExtNat>& terms, bool tail_infinitely_nonzero = false);

}  // namespace nkaq::series
