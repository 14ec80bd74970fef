#include "compiled_form.hpp"

#include <array>

namespace chen::detail {

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) {
  for (const auto& [e, c] : p.terms()) monomials.push_back({c.get_d(), e});
}

double CompiledPolynomial::operator()(const double* x) const {
  double sum = 0.0;
  for (const auto& m : monomials) {
    double v = m.coef;
    for (size_t i = 0; i < m.exps.size(); ++i)
      for (unsigned k = 0; k < m.exps[i]; ++k) v *= x[i];
    sum += v;
  }
  return sum;
}

CompiledForm::CompiledForm(const Form& w) : n_(w.dim()), p_(w.degree()) {
  for (const auto& [idx, f] : w.terms()) {
    Term t{{}, CompiledPolynomial(f), {}};
    for (int i : idx) t.idx.push_back(i - 1);
    for (int j = 1; j <= n_; ++j) t.grad.emplace_back(f.partial(j));
    terms_.push_back(std::move(t));
  }
}

double CompiledForm::basis_det(const Term& t, const double* const* vecs) const {
  std::array<double, 64> m{};
  std::vector<double> big;
  double* a = m.data();
  if (p_ * p_ > static_cast<int>(m.size())) {
    big.resize(static_cast<size_t>(p_) * p_);
    a = big.data();
  }
  for (int r = 0; r < p_; ++r)
    for (int b = 0; b < p_; ++b) a[r * p_ + b] = vecs[b][t.idx[r]];
  return determinant(std::span<double>(a, static_cast<size_t>(p_) * p_), p_);
}

double CompiledForm::eval(const double* x, const double* const* vecs) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coef(x) * basis_det(t, vecs);
  return sum;
}

double CompiledForm::eval_coef_derivative(const double* x, const double* dir, const double* const* vecs) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double df = 0.0;
    for (int j = 0; j < n_; ++j)
      if (dir[j] != 0.0) df += t.grad[j](x) * dir[j];
    if (df != 0.0) sum += df * basis_det(t, vecs);
  }
  return sum;
}

}  // namespace chen::detail
