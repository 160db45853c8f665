#include "nkaq/interp/completeness.hpp"

#include <cmath>

namespace nkaq::interp {

double CompletenessSetting::weight_of(const series::Word& t) const {
  double w = 1.0;
  for (const auto& a : t) w *= static_cast<double>(count.at(a));
  return w;
}

CompletenessSetting completeness_setting(const std::vector<std::string>& alphabet, int n) {
  if (n < 1) throw std::invalid_argument("string length bound must be at least 1");
  CompletenessSetting cs{series::WordIndex(alphabet, n), {}, {}};
  const auto& idx = cs.strings;
  const int dim = static_cast<int>(idx.size());
  cs.setting.dim = dim;
  for (const auto& a : alphabet) {
    std::vector<std::size_t> sources;
    for (std::size_t id = 0; id < idx.size(); ++id) {
      if (idx.length(id) < n) sources.push_back(id);
    }
    cs.count[a] = sources.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(sources.size()));
    std::vector<Matrix> ks;
    for (auto id : sources) {
      auto w = idx.word(id);
      w.push_back(a);
      Matrix k = Matrix::Zero(dim, dim);
      k(static_cast<Eigen::Index>(idx.index(w)), static_cast<Eigen::Index>(id)) = scale;
      ks.push_back(std::move(k));
    }
    cs.setting.eval.emplace(a, Superoperator(dim, dim, std::move(ks)));
  }
  return cs;
}

CompletenessReport check_completeness_claim(const Expr& e, const series::Word& s, double r,
                                            const CompletenessSetting& cs, double tol,
                                            const StarPolicy& policy) {
  const auto& idx = cs.strings;
  const int dim = cs.setting.dim;
  const int n = idx.max_len();
  if (static_cast<int>(s.size()) > n) throw std::invalid_argument("start string longer than the space allows");

  CompletenessReport rep;
  rep.rhs = Matrix::Zero(dim, dim);
  for (std::size_t id = 0; id < idx.size(); ++id) {
    const auto t = idx.word(id);
    if (static_cast<int>(s.size() + t.size()) > n) continue;
    const series::ExtNat c = series::coeff(e, t);
    if (c.is_infinite()) throw InfiniteCoefficient(t);
    if (c.is_zero()) continue;
    auto st = s;
    st.insert(st.end(), t.begin(), t.end());
    const auto k = static_cast<Eigen::Index>(idx.index(st));
    rep.rhs(k, k) += static_cast<double>(c.value()) * r / cs.weight_of(t);
  }
  Matrix rho = Matrix::Zero(dim, dim);
  const auto k0 = static_cast<Eigen::Index>(idx.index(s));
  rho(k0, k0) = r;
  rep.lhs = interpret(e, cs.setting, policy).apply(rho);
  rep.distance = quantum::max_abs(rep.lhs - rep.rhs);
  rep.ok = rep.distance < tol;
  return rep;
}

}  // namespace nkaq::interp
