#pragma once

#include <map>
#include <optional>
#include <string>

#include "nkaq/program/encode.hpp"
#include "nkaq/quantum/json_io.hpp"
#include "nkaq/quantum/transfer.hpp"
#include "nkaq/syntax/expr.hpp"

namespace nkaq::interp {

using quantum::Matrix;
using quantum::StarPolicy;
using quantum::Superoperator;
using syntax::Expr;

struct InterpretationSetting {
  int dim = 0;
  std::map<std::string, Superoperator> eval;
};

struct Interpretation {
  Matrix transfer;
  bool converged = true;
  std::size_t terms = 0;  // largest star partial-sum length used
  int dim = 0;

  Superoperator superop() const;
  Matrix apply(const Matrix& rho) const;
};

// Q(0) = O, Q(1) = I, Q(a) = eval(a), Q(e f) = Q(e) then Q(f), Q(e*) = Sum Q(e)^n.
// A star inside a product is summed together with everything applied after
// it, so the truncation rule sees the same increments as a while loop.
Interpretation interpret(const Expr& e, const InterpretationSetting& s, const StarPolicy& policy = {});

// Heisenberg-picture twin: atoms map to dual superoperators and products
// compose in the opposite order. ~x requires x to denote a constant map
// rho -> tr(rho) A and yields rho -> tr(rho) (I - A); under ~, the constant
// 1 stands for the top effect.
Interpretation dual_interpret(const Expr& e, const InterpretationSetting& s, const StarPolicy& policy = {});

// C_A(rho) = tr(rho) A.
Superoperator constant_superop(const Matrix& a);
// Kraus {|i><j| sqrt(A)}: the map whose dual is C_A.
Superoperator effect_atom_superop(const Matrix& a);
// Returns A when the transfer matrix is that of C_A within tol.
std::optional<Matrix> constant_of_transfer(const Matrix& t, int dim, double tol = 1e-9);

// eval = inverse of the encoder, each symbol mapped to its elementary
// superoperator on the full layout space.
InterpretationSetting setting_from_encoder(const program::EncoderSetting& enc, const program::ProgramContext& ctx);

// {"dim": n, "eval": {symbol: superoperator}}
InterpretationSetting setting_from_json(const quantum::Json& j);
quantum::Json setting_to_json(const InterpretationSetting& s);

struct RecoveryReport {
  bool ok = false;
  double distance = 0.0;
  bool interpret_converged = false;
  bool denote_converged = false;
};

// interpret(encode(P)) against denote(P) by transfer (equivalently Choi)
// max-abs distance; both certificates must agree.
RecoveryReport check_enc_recovery(const program::Program& p, const program::ProgramContext& ctx,
                                  const program::EncoderSetting& enc, double tol,
                                  const StarPolicy& policy = {});

}  // namespace nkaq::interp
