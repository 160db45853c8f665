#include "nkaq/program/denote.hpp"

#include <algorithm>
#include <set>

namespace nkaq::program {

using quantum::Matrix;

std::string Elementary::key() const {
  std::string rs;
  for (std::size_t i = 0; i < regs.size(); ++i) rs += (i ? "," : "") + regs[i];
  switch (kind) {
    case ElemKind::unitary: return name + "[" + rs + "]";
    case ElemKind::init: return name + ":=|" + std::to_string(index) + ">";
    case ElemKind::branch: return name + "[" + rs + "]#" + std::to_string(index);
  }
  return {};
}

namespace {

void collect(const Program& p, const ProgramContext& ctx, std::map<std::string, Elementary>& out) {
  switch (p.kind()) {
    case StmtKind::skip:
    case StmtKind::abort: return;
    case StmtKind::init: {
      Elementary e{ElemKind::init, p.name(), {p.name()}, p.value()};
      out.emplace(e.key(), e);
      return;
    }
    case StmtKind::unitary: {
      Elementary e{ElemKind::unitary, p.name(), p.regs(), 0};
      out.emplace(e.key(), e);
      return;
    }
    case StmtKind::seq:
      collect(p.first(), ctx, out);
      collect(p.second(), ctx, out);
      return;
    case StmtKind::case_:
    case StmtKind::while_: {
      const auto m = ctx.measurement(p.name(), ctx.layout.dim_of(p.regs()));
      for (int i : m.outcomes()) {
        Elementary e{ElemKind::branch, p.name(), p.regs(), i};
        out.emplace(e.key(), e);
      }
      if (p.is(StmtKind::while_)) {
        collect(p.body(), ctx, out);
      } else {
        for (const auto& [i, b] : p.branches()) collect(b, ctx, out);
      }
      return;
    }
  }
}

}  // namespace

std::vector<Elementary> elementaries_of(const Program& p, const ProgramContext& ctx) {
  std::map<std::string, Elementary> m;
  collect(p, ctx, m);
  std::vector<Elementary> out;
  for (auto& [k, e] : m) out.push_back(e);
  return out;
}

Superoperator elementary_superop(const Elementary& e, const ProgramContext& ctx) {
  const auto& layout = ctx.layout;
  switch (e.kind) {
    case ElemKind::unitary: {
      const int d = layout.dim_of(e.regs);
      return Superoperator::unitary(layout.embed(ctx.unitary(e.name, d), e.regs));
    }
    case ElemKind::init: {
      const int d = layout.dim_of(e.name);
      std::vector<Matrix> ks;
      for (int i = 0; i < d; ++i) ks.push_back(layout.embed(quantum::ket_bra(d, e.index, i), {e.name}));
      return Superoperator(std::move(ks));
    }
    case ElemKind::branch: {
      const auto m = ctx.measurement(e.name, layout.dim_of(e.regs));
      return Superoperator({layout.embed(m.op(e.index), e.regs)});
    }
  }
  throw std::logic_error("unknown elementary kind");
}

namespace {

struct DenseOps {
  using M = Matrix;
  static M identity(int n) { return Matrix::Identity(n, n); }
  static M zero(int n) { return Matrix::Zero(n, n); }
  static M transfer(const Superoperator& e) { return quantum::transfer_of(e); }
};

struct SparseOps {
  using M = quantum::SparseMatrix;
  static M identity(int n) { return quantum::sparse_identity(n); }
  static M zero(int n) { return M(n, n); }
  static M transfer(const Superoperator& e) { return quantum::sparse_transfer_of(e.kraus()); }
};

template <class Ops>
class Denoter {
 public:
  using M = typename Ops::M;
  Denoter(const ProgramContext& ctx, const StarPolicy& policy) : ctx_(ctx), policy_(policy) {}

  M run(const Program& p) {
    const int d = ctx_.layout.total_dim();
    switch (p.kind()) {
      case StmtKind::skip: return Ops::identity(d * d);
      case StmtKind::abort: return Ops::zero(d * d);
      case StmtKind::init: return elem({ElemKind::init, p.name(), {p.name()}, p.value()});
      case StmtKind::unitary: return elem({ElemKind::unitary, p.name(), p.regs(), 0});
      case StmtKind::seq: {
        const M a = run(p.first());
        return M(run(p.second()) * a);
      }
      case StmtKind::case_: {
        M t = Ops::zero(d * d);
        for (const auto& [i, b] : p.branches()) {
          t += M(run(b) * elem({ElemKind::branch, p.name(), p.regs(), i}));
        }
        return t;
      }
      case StmtKind::while_: {
        const M m0 = elem({ElemKind::branch, p.name(), p.regs(), 0});
        const M m1 = elem({ElemKind::branch, p.name(), p.regs(), 1});
        const M step = run(p.body()) * m1;
        auto s = quantum::geometric_series(step, m0, quantum::Side::left, policy_);
        converged_ = converged_ && s.converged;
        terms_ = std::max(terms_, s.terms);
        return std::move(s.value);
      }
    }
    throw std::logic_error("unknown statement kind");
  }

  bool converged() const { return converged_; }
  std::size_t terms() const { return terms_; }

 private:
  const M& elem(const Elementary& e) {
    const std::string k = e.key();
    if (auto it = cache_.find(k); it != cache_.end()) return it->second;
    return cache_.emplace(k, Ops::transfer(elementary_superop(e, ctx_))).first->second;
  }

  const ProgramContext& ctx_;
  const StarPolicy& policy_;
  std::map<std::string, M> cache_;
  bool converged_ = true;
  std::size_t terms_ = 0;
};

}  // namespace

Denotation denote_transfer(const Program& p, const ProgramContext& ctx, const StarPolicy& policy) {
  Denoter<DenseOps> d(ctx, policy);
  Denotation out;
  out.transfer = d.run(p);
  out.converged = d.converged();
  out.loop_terms = d.terms();
  return out;
}

SparseDenotation denote_sparse(const Program& p, const ProgramContext& ctx, const StarPolicy& policy) {
  Denoter<SparseOps> d(ctx, policy);
  SparseDenotation out;
  out.transfer = d.run(p);
  out.converged = d.converged();
  out.loop_terms = d.terms();
  return out;
}

Superoperator denote(const Program& p, const ProgramContext& ctx, const StarPolicy& policy) {
  const Denotation d = denote_transfer(p, ctx, policy);
  if (!d.converged) throw NonConvergent(d.loop_terms);
  const int dim = ctx.layout.total_dim();
  return quantum::superop_of_transfer(d.transfer, dim, dim);
}

}  // namespace nkaq::program
