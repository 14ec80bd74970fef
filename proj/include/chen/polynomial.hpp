#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace chen {

using Rational = mpq_class;
using Exponents = std::vector<unsigned>;

/// Multivariate polynomial in x1..xn with exact rational coefficients.
///
/// Terms with a zero coefficient are never stored, and every exponent vector
/// has length exactly n.
class Polynomial {
 public:
  explicit Polynomial(int n);

  static Polynomial constant(int n, const Rational& c);
  /// x_i with 1-based i.
  static Polynomial variable(int n, int i);
  static Polynomial monomial(int n, Exponents e, const Rational& c);

  int dim() const { return n_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;

  /// Adds c * x^e in place.
  void add_term(const Exponents& e, const Rational& c);

  double evaluate(std::span<const double> x) const;
  /// Exact partial derivative with respect to x_i (1-based).
  Polynomial partial(int i) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_dim(const Polynomial& o) const;

  int n_;
  std::map<Exponents, Rational> terms_;
};

std::string to_string(const Polynomial& p);

}  // namespace chen
