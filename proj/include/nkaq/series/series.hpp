#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nkaq/exec.hpp"
#include "nkaq/series/extnat.hpp"
#include "nkaq/syntax/expr.hpp"

namespace nkaq::series {

using syntax::Expr;

// A word is a sequence of symbol names (symbols may be longer than one
// character, e.g. m0).
using Word = std::vector<std::string>;

// "eps" for the empty word; plain concatenation when every symbol is a
// single character, space-separated otherwise.
std::string word_to_string(const Word& w);
// Inverse of word_to_string against a known alphabet. Accepts "eps"/"",
// space-separated names, or a run of single-character names.
Word parse_word(const std::string& text, const std::vector<std::string>& alphabet);

// Coefficient of w in the series of e, by memoized recursion over
// (subexpression, subword) spans. Throws std::invalid_argument on Var/Neg.
ExtNat coeff(const Expr& e, const Word& w);

// Shortlex enumeration of all words of length <= L over an ordered alphabet.
class WordIndex {
 public:
  WordIndex(std::vector<std::string> alphabet, int max_len);

  std::size_t size() const { return offsets_.back(); }
  int max_len() const { return max_len_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t count_of_length(int n) const { return offsets_[n + 1] - offsets_[n]; }
  std::size_t offset(int n) const { return offsets_[n]; }

  Word word(std::size_t id) const;
  int length(std::size_t id) const;
  std::size_t index(const Word& w) const;
  // Id of the word made of the first i letters (prefix) or the letters from
  // position i on (suffix) of the word with the given id and length n.
  std::size_t prefix(std::size_t id, int n, int i) const;
  std::size_t suffix(std::size_t id, int n, int i) const;
  std::size_t symbol_index(const std::string& s) const;

 private:
  std::vector<std::string> alphabet_;
  int max_len_;
  std::vector<std::size_t> offsets_;  // offsets_[n] = number of words shorter than n
  std::vector<std::size_t> powers_;
};

using nkaq::Exec;

// Coefficients of every word up to the index's length bound.
class FormalSeries {
 public:
  FormalSeries(WordIndex index, std::vector<ExtNat> coeffs)
      : index_(std::move(index)), coeffs_(std::move(coeffs)) {}

  const WordIndex& index() const { return index_; }
  const std::vector<ExtNat>& coeffs() const { return coeffs_; }
  ExtNat at(const Word& w) const { return coeffs_[index_.index(w)]; }
  // Lines "word<TAB>coeff", zero coefficients omitted.
  std::string dump() const;

 private:
  WordIndex index_;
  std::vector<ExtNat> coeffs_;
};

// Truncated series of e by dense arithmetic over the word index. This is an
// independent route from coeff(): sums/products/stars are computed on whole
// coefficient tables.
FormalSeries truncated_series(const Expr& e, const WordIndex& index, Exec exec = Exec::parallel);

// Table kernels, exposed for the serial/parallel benchmark and tests.
std::vector<ExtNat> series_product(const WordIndex& idx, const std::vector<ExtNat>& f,
                                   const std::vector<ExtNat>& g, Exec exec);
std::vector<ExtNat> series_star(const WordIndex& idx, const std::vector<ExtNat>& f, Exec exec);

struct Counterexample {
  Word word;
  ExtNat lhs;
  ExtNat rhs;
};

struct BoundedResult {
  bool equal = true;
  std::optional<Counterexample> counterexample;
};

std::vector<std::string> joint_alphabet(const Expr& e, const Expr& f);

// Equal iff coefficients agree on every word of length <= L; otherwise the
// shortest, then lexicographically least, differing word.
BoundedResult bounded_equiv(const Expr& e, const Expr& f, int L);
// Coefficientwise e <= f on words up to length L; first violation reported.
BoundedResult bounded_leq(const Expr& e, const Expr& f, int L);

using Rational = boost::multiprecision::cpp_rational;

struct WeightedAutomaton {
  std::size_t states = 0;
  std::vector<Rational> initial;
  std::vector<Rational> final_weights;
  // symbol -> dense states x states matrix (row = from, col = to)
  std::map<std::string, std::vector<std::vector<Rational>>> transitions;

  Rational weight(const Word& w) const;
};

class ImproperStar : public std::runtime_error {
 public:
  explicit ImproperStar(const Expr& sub);
  const Expr& subexpression() const { return sub_; }

 private:
  Expr sub_;
};

// Every starred subexpression has epsilon-coefficient 0.
bool is_proper(const Expr& e);

// Position (Glushkov) automaton with natural weights. Throws ImproperStar.
WeightedAutomaton glushkov_automaton(const Expr& e);

struct ExactResult {
  enum class Verdict { equal, distinguished, unsupported } verdict;
  Word witness;
};

// Series equality on the proper fragment by forward-basis reachability over
// the rationals; Unsupported when either side is improper.
ExactResult exact_equiv(const Expr& e, const Expr& f);

}  // namespace nkaq::series
