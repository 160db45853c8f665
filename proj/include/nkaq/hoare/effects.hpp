#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nkaq/quantum/random.hpp"

namespace nkaq::hoare {

using quantum::Effect;
using quantum::Matrix;
using quantum::Measurement;

Effect negate_effect(const Effect& a);

// A + B when A + B is below I within tol; nullopt otherwise.
std::optional<Effect> oplus_effects(const Effect& a, const Effect& b, double tol = quantum::kDefaultTol);

// Heisenberg branch M_i^dagger A M_i.
Matrix dual_branch(const Measurement& m, int outcome, const Matrix& a);

struct PartitionDecl {
  std::string name;
  std::string measurement;          // name in the program context
  std::vector<std::string> symbols;  // one per outcome, in outcome order
};

struct BranchReport {
  int outcome = 0;
  bool maps_effects = false;  // M_i^dagger A M_i stayed an effect on every sample
};

struct PartitionReport {
  bool complete = false;  // Sum M_i^dagger M_i = I
  double gram_error = 0.0;
  std::vector<BranchReport> branches;
  bool ok() const;
};

// Samples are I, O and `samples` random effects.
PartitionReport check_partition(const Measurement& m, double tol, quantum::Rng& rng, int samples = 8);

struct EffectLawReport {
  int cases = 0;
  std::map<std::string, int> failures;  // law name -> failing cases
  bool ok() const { return failures.empty(); }
};

// Effect-algebra laws on `cases` random effects of dimension 2..4: the
// partial sum is commutative and associative where defined, 0 is its unit,
// ~a is the unique complement, a (+) I is defined only for a = 0, double
// negation, negation reverses the order, and negation commutes with a
// random measurement's dual branches (partition-transform).
EffectLawReport check_effect_laws(quantum::Rng& rng, int cases, double tol);

}  // namespace nkaq::hoare
