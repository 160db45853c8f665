#include "nkaq/interp/interpret.hpp"

#include <Eigen/Eigenvalues>

#include "nkaq/program/denote.hpp"

namespace nkaq::interp {

using syntax::ExprKind;

Superoperator Interpretation::superop() const { return quantum::superop_of_transfer(transfer, dim, dim); }

Matrix Interpretation::apply(const Matrix& rho) const {
  const Eigen::Map<const Eigen::VectorXcd> v(rho.data(), rho.size());
  const Eigen::VectorXcd out = transfer * v;
  return Eigen::Map<const Matrix>(out.data(), dim, dim);
}

Superoperator constant_superop(const Matrix& a) {
  const int d = static_cast<int>(a.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(quantum::hermitize(a));
  const Matrix root = es.operatorSqrt();
  std::vector<Matrix> ks;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) ks.push_back(root * quantum::ket_bra(d, i, j));
  }
  return Superoperator(d, d, std::move(ks));
}

Superoperator effect_atom_superop(const Matrix& a) { return quantum::dual(constant_superop(a)); }

std::optional<Matrix> constant_of_transfer(const Matrix& t, int dim, double tol) {
  // Column of |i><j| is vec(C(|i><j|)) = delta_ij vec(A).
  const Eigen::VectorXcd a = t.col(0);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const Eigen::VectorXcd expect = i == j ? a : Eigen::VectorXcd::Zero(a.size());
      if ((t.col(i + dim * j) - expect).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    }
  }
  return Matrix(Eigen::Map<const Matrix>(a.data(), dim, dim));
}

namespace {

class Evaluator {
 public:
  Evaluator(const InterpretationSetting& s, const StarPolicy& p, bool dual)
      : s_(s), policy_(p), dual_(dual), d2_(s.dim * s.dim) {}

  Matrix eval(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::zero: return Matrix::Zero(d2_, d2_);
      case ExprKind::one: return Matrix::Identity(d2_, d2_);
      case ExprKind::atom: return atom(e.name());
      case ExprKind::sum: {
        Matrix t = Matrix::Zero(d2_, d2_);
        for (const auto& c : e.children()) t += eval(c);
        return t;
      }
      case ExprKind::star: return star(e.child(0), Matrix::Identity(d2_, d2_));
      case ExprKind::prod: return product(e);
      case ExprKind::neg: return negation(e.child(0));
      case ExprKind::var: throw std::invalid_argument("cannot interpret a metavariable");
    }
    throw std::logic_error("unknown expression kind");
  }

  bool converged() const { return converged_; }
  std::size_t terms() const { return terms_; }

 private:
  // Primal: T(x1 ... xk) = Tk ... T1, folded from the right so each star is
  // summed with the factors applied after it. Dual: D1 ... Dk, folded from
  // the left for the same reason.
  Matrix product(const Expr& e) {
    const std::size_t k = e.arity();
    Matrix acc = Matrix::Identity(d2_, d2_);
    for (std::size_t step = 0; step < k; ++step) {
      const Expr& f = e.child(dual_ ? step : k - 1 - step);
      if (f.is(ExprKind::star)) {
        acc = star(f.child(0), acc);
      } else {
        acc = acc * eval(f);
      }
    }
    return acc;
  }

  Matrix star(const Expr& body, const Matrix& context) {
    auto s = quantum::geometric_series(eval(body), context, quantum::Side::left, policy_);
    converged_ = converged_ && s.converged;
    terms_ = std::max(terms_, s.terms);
    return std::move(s.value);
  }

  Matrix negation(const Expr& x) {
    Matrix a;
    if (x.is(ExprKind::one)) {
      a = Matrix::Identity(s_.dim, s_.dim);
    } else {
      // The operand's dual semantics must be a constant map C_A.
      Evaluator inner(s_, policy_, true);
      const Matrix t = inner.eval(x);
      converged_ = converged_ && inner.converged();
      auto c = constant_of_transfer(t, s_.dim);
      if (!c) throw std::invalid_argument("negation applied to a non-effect expression");
      a = *c;
    }
    const Matrix dual_t = quantum::transfer_of(constant_superop(Matrix::Identity(s_.dim, s_.dim) - a));
    return dual_ ? dual_t : Matrix(dual_t.adjoint());
  }

  const Matrix& atom(const std::string& name) {
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    const auto it = s_.eval.find(name);
    if (it == s_.eval.end()) throw std::invalid_argument("no interpretation for symbol '" + name + "'");
    const Superoperator& e = it->second;
    if (e.in_dim() != s_.dim || e.out_dim() != s_.dim) {
      throw quantum::DimensionMismatch("interpretation of '" + name + "' has the wrong dimension");
    }
    return cache_.emplace(name, quantum::transfer_of(dual_ ? quantum::dual(e) : e)).first->second;
  }

  const InterpretationSetting& s_;
  const StarPolicy& policy_;
  bool dual_;
  int d2_;
  std::map<std::string, Matrix> cache_;
  bool converged_ = true;
  std::size_t terms_ = 0;
};

Interpretation run(const Expr& e, const InterpretationSetting& s, const StarPolicy& policy, bool dual) {
  Evaluator ev(s, policy, dual);
  Interpretation out;
  out.transfer = ev.eval(e);
  out.converged = ev.converged();
  out.terms = ev.terms();
  out.dim = s.dim;
  return out;
}

}  // namespace

Interpretation interpret(const Expr& e, const InterpretationSetting& s, const StarPolicy& policy) {
  return run(e, s, policy, false);
}

Interpretation dual_interpret(const Expr& e, const InterpretationSetting& s, const StarPolicy& policy) {
  return run(e, s, policy, true);
}

InterpretationSetting setting_from_encoder(const program::EncoderSetting& enc, const program::ProgramContext& ctx) {
  InterpretationSetting s;
  s.dim = ctx.layout.total_dim();
  for (const auto& [key, sym] : enc.entries()) {
    s.eval.emplace(sym, program::elementary_superop(enc.elementary(key), ctx));
  }
  return s;
}

InterpretationSetting setting_from_json(const quantum::Json& j) {
  InterpretationSetting s;
  try {
    s.dim = j.at("dim").get<int>();
    for (const auto& [name, e] : j.at("eval").items()) s.eval.emplace(name, quantum::superop_from_json(e));
  } catch (const quantum::Json::exception& ex) {
    throw quantum::FormatError(std::string("malformed interpretation setting: ") + ex.what());
  }
  return s;
}

quantum::Json setting_to_json(const InterpretationSetting& s) {
  quantum::Json ev = quantum::Json::object();
  for (const auto& [n, e] : s.eval) ev[n] = quantum::superop_to_json(e);
  return {{"dim", s.dim}, {"eval", ev}};
}

RecoveryReport check_enc_recovery(const program::Program& p, const program::ProgramContext& ctx,
                                  const program::EncoderSetting& enc, double tol, const StarPolicy& policy) {
  RecoveryReport r;
  const auto lhs = interpret(program::encode(p, enc), setting_from_encoder(enc, ctx), policy);
  const auto rhs = program::denote_transfer(p, ctx, policy);
  r.interpret_converged = lhs.converged;
  r.denote_converged = rhs.converged;
  r.distance = quantum::max_abs(lhs.transfer - rhs.transfer);
  r.ok = r.interpret_converged == r.denote_converged && r.distance < tol;
  return r;
}

}  // namespace nkaq::interp
