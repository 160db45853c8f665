#include "nkaq/hoare/effects.hpp"

namespace nkaq::hoare {

using quantum::identity;
using quantum::loewner_leq;
using quantum::max_abs;

Effect negate_effect(const Effect& a) { return Effect(identity(a.dim()) - a.matrix()); }

std::optional<Effect> oplus_effects(const Effect& a, const Effect& b, double tol) {
  if (a.dim() != b.dim()) throw quantum::DimensionMismatch("oplus_effects: dimensions differ");
  const Matrix s = a.matrix() + b.matrix();
  if (!loewner_leq(s, identity(a.dim()), tol)) return std::nullopt;
  return Effect(s, tol);
}

Matrix dual_branch(const Measurement& m, int outcome, const Matrix& a) {
  const Matrix& k = m.op(outcome);
  return k.adjoint() * a * k;
}

bool PartitionReport::ok() const {
  if (!complete) return false;
  for (const auto& b : branches) {
    if (!b.maps_effects) return false;
  }
  return true;
}

namespace {

bool is_effect(const Matrix& a, double tol) {
  return quantum::is_hermitian(a, tol) && quantum::is_psd(a, tol) && loewner_leq(a, identity(static_cast<int>(a.rows())), tol);
}

}  // namespace

PartitionReport check_partition(const Measurement& m, double tol, quantum::Rng& rng, int samples) {
  PartitionReport r;
  const int d = m.dim();
  Matrix gram = Matrix::Zero(d, d);
  for (const auto& [i, k] : m.ops()) gram += k.adjoint() * k;
  r.gram_error = max_abs(gram - identity(d));
  r.complete = r.gram_error <= tol;
  std::vector<Matrix> probes{identity(d), Matrix::Zero(d, d)};
  for (int s = 0; s < samples; ++s) probes.push_back(quantum::random_effect(d, rng));
  for (int i : m.outcomes()) {
    BranchReport b{i, true};
    for (const auto& a : probes) b.maps_effects = b.maps_effects && is_effect(dual_branch(m, i, a), tol);
    r.branches.push_back(b);
  }
  return r;
}

EffectLawReport check_effect_laws(quantum::Rng& rng, int cases, double tol) {
  EffectLawReport rep;
  std::uniform_int_distribution<int> dim_dist(2, 4);
  auto fail = [&](const char* law, bool bad) {
    if (bad) ++rep.failures[law];
  };
  auto same = [&](const Effect& x, const Effect& y) { return max_abs(x.matrix() - y.matrix()) <= tol; };

  for (int c = 0; c < cases; ++c, ++rep.cases) {
    const int d = dim_dist(rng);
    const Matrix id = identity(d);
    const Effect a(quantum::random_effect(d, rng));
    const Effect b(quantum::random_effect(d, rng));
    const Effect zero(Matrix::Zero(d, d));
    const Effect top(id);

    fail("bounds", !is_effect(a.matrix(), tol));

    // Unscaled effects exercise the undefined side as well.
    const auto ab = oplus_effects(a, b, tol);
    const auto ba = oplus_effects(b, a, tol);
    fail("oplus-commutative", ab.has_value() != ba.has_value() || (ab && !same(*ab, *ba)));

    const Effect x(a.matrix() / 3.0), y(b.matrix() / 3.0), z(quantum::random_effect(d, rng) / 3.0);
    const auto xy = oplus_effects(x, y, tol);
    const auto yz = oplus_effects(y, z, tol);
    const auto left = xy ? oplus_effects(*xy, z, tol) : std::nullopt;
    const auto right = yz ? oplus_effects(x, *yz, tol) : std::nullopt;
    fail("oplus-associative", !left || !right || !same(*left, *right));

    const auto za = oplus_effects(zero, a, tol);
    fail("zero-unit", !za || !same(*za, a));

    const Effect na = negate_effect(a);
    const auto complement = oplus_effects(a, na, tol);
    fail("negation-sum", !complement || !same(*complement, top));

    // Any other candidate complement misses I.
    const Matrix bump = quantum::random_psd(d, rng);
    const Matrix other = na.matrix() + 0.1 * bump / std::max(1.0, quantum::max_eigenvalue(bump));
    if (is_effect(other, tol)) {
      const auto s = oplus_effects(a, Effect(other, tol), tol);
      fail("negation-unique", s && same(*s, top));
    }

    fail("zero-one", oplus_effects(a, top, tol).has_value() && max_abs(a.matrix()) > tol);
    fail("double-negation", !same(negate_effect(na), a));

    // a <= a (+) w for a small w, so ~(a (+) w) <= ~a.
    const Effect w(quantum::random_effect(d, rng) * 0.5);
    if (const auto aw = oplus_effects(Effect(a.matrix() * 0.5), w, tol)) {
      const Effect lo(a.matrix() * 0.5);
      fail("negation-reverse", !loewner_leq(negate_effect(*aw).matrix(), negate_effect(lo).matrix(), tol));
    }

    const int outcomes = std::uniform_int_distribution<int>(2, d)(rng);
    const Measurement m = quantum::random_projective_measurement(d, outcomes, rng);
    Matrix lhs = Matrix::Zero(d, d);
    Matrix rhs = Matrix::Zero(d, d);
    for (int i : m.outcomes()) {
      const Matrix ai = quantum::random_effect(d, rng);
      lhs += dual_branch(m, i, ai);
      rhs += dual_branch(m, i, id - ai);
    }
    fail("partition-transform", max_abs((id - lhs) - rhs) > tol);
  }
  return rep;
}

}  // namespace nkaq::hoare
