#pragma once

// Floating-point snapshot of an exact Form for the inner quadrature loops.

#include "chen/forms.hpp"

#include <vector>

namespace chen::detail {

struct CompiledPolynomial {
  struct Monomial {
    double coef;
    std::vector<unsigned> exps;
  };
  std::vector<Monomial> monomials;

  explicit CompiledPolynomial(const Polynomial& p);
  double operator()(const double* x) const;
};

class CompiledForm {
 public:
  explicit CompiledForm(const Form& w);

  int dim() const { return n_; }
  int degree() const { return p_; }

  /// w(x)(vecs[0], ..., vecs[p-1]); each vecs[b] points at n doubles.
  double eval(const double* x, const double* const* vecs) const;
  /// (d/ds) w(x + s*dir)(vecs...) at s = 0, coefficients differentiated only.
  double eval_coef_derivative(const double* x, const double* dir, const double* const* vecs) const;

 private:
  struct Term {
    std::vector<int> idx;  // 0-based
    CompiledPolynomial coef;
    std::vector<CompiledPolynomial> grad;
  };
  double basis_det(const Term& t, const double* const* vecs) const;

  int n_;
  int p_;
  std::vector<Term> terms_;
};

}  // namespace chen::detail
