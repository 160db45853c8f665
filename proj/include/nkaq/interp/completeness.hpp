#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkaq/interp/interpret.hpp"
#include "nkaq/series/series.hpp"

namespace nkaq::interp {

// Hilbert space spanned by |s> for all strings s with |s| <= n (shortlex
// order), with eval(a) = Sum_s K_{a,s} . K_{a,s}^dagger and
// K_{a,s} = |sa><s| / sqrt(#_a), #_a = |{s : sa in S}|.
struct CompletenessSetting {
  series::WordIndex strings;
  std::map<std::string, std::size_t> count;  // #_a
  InterpretationSetting setting;

  // #_t = product of #_a over the letters of t.
  double weight_of(const series::Word& t) const;
};

CompletenessSetting completeness_setting(const std::vector<std::string>& alphabet, int n);

class InfiniteCoefficient : public std::runtime_error {
 public:
  explicit InfiniteCoefficient(const series::Word& t)
      : std::runtime_error("coefficient of '" + series::word_to_string(t) + "' is infinite"), word_(t) {}
  const series::Word& word() const { return word_; }

 private:
  series::Word word_;
};

struct CompletenessReport {
  bool ok = false;
  double distance = 0.0;
  Matrix lhs;
  Matrix rhs;
};

// LHS: interpret(e) applied to r|s><s|. RHS: Sum over st in S of
// coeff(e, t) * r / #_t * |st><st|. Throws InfiniteCoefficient.
CompletenessReport check_completeness_claim(const Expr& e, const series::Word& s, double r,
                                            const CompletenessSetting& cs, double tol,
                                            const StarPolicy& policy = {});

}  // namespace nkaq::interp
