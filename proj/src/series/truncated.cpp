#include <algorithm>
#include <exception>
#include <set>
#include <sstream>
#include <unordered_map>

#include "nkaq/series/series.hpp"

namespace nkaq::series {

using syntax::ExprKind;

WordIndex::WordIndex(std::vector<std::string> alphabet, int max_len)
    : alphabet_(std::move(alphabet)), max_len_(max_len) {
  if (max_len < 0) throw std::invalid_argument("word length bound must be non-negative");
  const std::size_t k = alphabet_.size();
  powers_.assign(max_len + 1, 0);
  powers_[0] = 1;
  for (int n = 1; n <= max_len; ++n) powers_[n] = powers_[n - 1] * k;
  offsets_.assign(max_len + 2, 0);
  for (int n = 0; n <= max_len; ++n) offsets_[n + 1] = offsets_[n] + powers_[n];
}

int WordIndex::length(std::size_t id) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Word WordIndex::word(std::size_t id) const {
  const int n = length(id);
  std::size_t r = id - offsets_[n];
  Word w(n);
  const std::size_t k = alphabet_.size();
  for (int i = n - 1; i >= 0; --i) {
    w[i] = alphabet_[r % k];
    r /= k;
  }
  return w;
}

std::size_t WordIndex::symbol_index(const std::string& s) const {
  const auto it = std::find(alphabet_.begin(), alphabet_.end(), s);
  if (it == alphabet_.end()) throw std::invalid_argument("symbol '" + s + "' not in word index");
  return static_cast<std::size_t>(it - alphabet_.begin());
}

std::size_t WordIndex::index(const Word& w) const {
  const int n = static_cast<int>(w.size());
  if (n > max_len_) throw std::out_of_range("word longer than the index bound");
  std::size_t r = 0;
  for (const auto& s : w) r = r * alphabet_.size() + symbol_index(s);
  return offsets_[n] + r;
}

std::size_t WordIndex::prefix(std::size_t id, int n, int i) const {
  const std::size_t r = id - offsets_[n];
  return offsets_[i] + r / powers_[n - i];
}

std::size_t WordIndex::suffix(std::size_t id, int n, int i) const {
  const std::size_t r = id - offsets_[n];
  return offsets_[n - i] + r % powers_[n - i];
}

std::string FormalSeries::dump() const {
  std::ostringstream out;
  for (std::size_t id = 0; id < coeffs_.size(); ++id) {
    if (coeffs_[id].is_zero()) continue;
    out << word_to_string(index_.word(id)) << '\t' << coeffs_[id].str() << '\n';
  }
  return out.str();
}

namespace {

// ExtNat overflow may throw inside a parallel region; exceptions must not
// cross the OpenMP boundary, so the first one is parked and rethrown.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(nkaq_series_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

ExtNat convolve_at(const WordIndex& idx, const std::vector<ExtNat>& f,
                   const std::vector<ExtNat>& g, std::size_t id, int n) {
  ExtNat acc = 0;
  for (int i = 0; i <= n; ++i) {
    const ExtNat left = f[idx.prefix(id, n, i)];
    if (left.is_zero()) continue;
    acc += left * g[idx.suffix(id, n, i)];
  }
  return acc;
}

ExtNat proper_star_at(const WordIndex& idx, const std::vector<ExtNat>& f,
                      const std::vector<ExtNat>& h, std::size_t id, int n) {
  ExtNat acc = 0;
  for (int i = 1; i <= n; ++i) {
    const ExtNat head = f[idx.prefix(id, n, i)];
    if (head.is_zero()) continue;
    acc += head * h[idx.suffix(id, n, i)];
  }
  return acc;
}

}  // namespace

std::vector<ExtNat> series_product(const WordIndex& idx, const std::vector<ExtNat>& f,
                                   const std::vector<ExtNat>& g, Exec exec) {
  std::vector<ExtNat> out(idx.size());
  if (exec == Exec::serial) {
    for (int n = 0; n <= idx.max_len(); ++n) {
      for (std::size_t id = idx.offset(n); id < idx.offset(n + 1); ++id) {
        out[id] = convolve_at(idx, f, g, id, n);
      }
    }
    return out;
  }
  ErrorSlot err;
  const auto total = static_cast<std::int64_t>(idx.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < total; ++k) {
    const auto id = static_cast<std::size_t>(k);
    err.run([&] { out[id] = convolve_at(idx, f, g, id, idx.length(id)); });
  }
  err.rethrow();
  return out;
}

std::vector<ExtNat> series_star(const WordIndex& idx, const std::vector<ExtNat>& f, Exec exec) {
  // h is the star of f with its epsilon part removed; words of one length
  // depend only on strictly shorter suffixes, so each length is a parallel layer.
  std::vector<ExtNat> h(idx.size());
  h[0] = 1;
  for (int n = 1; n <= idx.max_len(); ++n) {
    const auto lo = static_cast<std::int64_t>(idx.offset(n));
    const auto hi = static_cast<std::int64_t>(idx.offset(n + 1));
    if (exec == Exec::serial) {
      for (std::int64_t k = lo; k < hi; ++k) {
        h[k] = proper_star_at(idx, f, h, static_cast<std::size_t>(k), n);
      }
      continue;
    }
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = lo; k < hi; ++k) {
      err.run([&] { h[k] = proper_star_at(idx, f, h, static_cast<std::size_t>(k), n); });
    }
    err.rethrow();
  }
  if (f[0].is_zero()) return h;
  for (auto& c : h) c = c.is_zero() ? ExtNat(0) : ExtNat::infinity();
  return h;
}

namespace {

class TableBuilder {
 public:
  TableBuilder(const WordIndex& idx, Exec exec) : idx_(idx), exec_(exec) {}

  const std::vector<ExtNat>& build(const Expr& e) {
    if (auto it = memo_.find(e.identity()); it != memo_.end()) return it->second;
    std::vector<ExtNat> t(idx_.size());
    switch (e.kind()) {
      case ExprKind::zero: break;
      case ExprKind::one: t[0] = 1; break;
      case ExprKind::atom:
        if (idx_.max_len() >= 1) t[idx_.index({e.name()})] = 1;
        break;
      case ExprKind::sum:
        for (const auto& c : e.children()) {
          const auto& ct = build(c);
          for (std::size_t i = 0; i < t.size(); ++i) t[i] += ct[i];
        }
        break;
      case ExprKind::prod:
        t = build(e.child(e.arity() - 1));
        for (std::size_t k = e.arity() - 1; k-- > 0;) {
          t = series_product(idx_, build(e.child(k)), t, exec_);
        }
        break;
      case ExprKind::star: t = series_star(idx_, build(e.child(0)), exec_); break;
      case ExprKind::var:
      case ExprKind::neg:
        throw std::invalid_argument("series semantics is defined for NKA expressions only");
    }
    return memo_.emplace(e.identity(), std::move(t)).first->second;
  }

 private:
  const WordIndex& idx_;
  Exec exec_;
  std::unordered_map<const void*, std::vector<ExtNat>> memo_;
};

}  // namespace

FormalSeries truncated_series(const Expr& e, const WordIndex& index, Exec exec) {
  TableBuilder b(index, exec);
  return FormalSeries(index, b.build(e));
}

std::vector<std::string> joint_alphabet(const Expr& e, const Expr& f) {
  std::set<std::string> names;
  for (const auto& s : syntax::atoms_of(e)) names.insert(s.name);
  for (const auto& s : syntax::atoms_of(f)) names.insert(s.name);
  return {names.begin(), names.end()};
}

namespace {

template <class Ok>
BoundedResult bounded_compare(const Expr& e, const Expr& f, int L, Ok ok) {
  const WordIndex idx(joint_alphabet(e, f), L);
  TableBuilder b(idx, Exec::parallel);
  const auto& te = b.build(e);
  const auto& tf = b.build(f);
  BoundedResult r;
  for (std::size_t id = 0; id < idx.size(); ++id) {
    if (!ok(te[id], tf[id])) {
      r.equal = false;
      r.counterexample = Counterexample{idx.word(id), te[id], tf[id]};
      break;
    }
  }
  return r;
}

}  // namespace

BoundedResult bounded_equiv(const Expr& e, const Expr& f, int L) {
  return bounded_compare(e, f, L, [](ExtNat a, ExtNat b) { return a == b; });
}

BoundedResult bounded_leq(const Expr& e, const Expr& f, int L) {
  return bounded_compare(e, f, L, [](ExtNat a, ExtNat b) { return a <= b; });
}

}  // namespace nkaq::series
