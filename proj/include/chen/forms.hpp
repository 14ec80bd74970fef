#pragma once

#include "chen/polynomial.hpp"

#include <map>
#include <span>
#include <vector>

namespace chen {

/// Strictly increasing 1-based coordinate indices (i1 < ... < ip).
using IndexTuple = std::vector<int>;

/// Sorts idx in place and returns the sign of the sorting permutation, or 0
/// when an index repeats.
int normalize_indices(IndexTuple& idx);

/// Determinant of the p x p row-major matrix `a` (destroyed).
double determinant(std::span<double> a, int p);

/// Homogeneous degree-p differential form on R^n with polynomial coefficients:
/// sum over increasing index tuples I of f_I dx_I.
///
/// A zero form may carry a degree above n (the result of d or wedge running
/// past the top degree); no term can ever be stored in that case.
class Form {
 public:
  Form(int n, int p);

  static Form scalar(const Polynomial& f);
  /// coef * dx_{idx[0]} ^ ... ^ dx_{idx[p-1]}, indices in any order.
  static Form basis(int n, IndexTuple idx, const Polynomial& coef);

  int dim() const { return n_; }
  int degree() const { return p_; }
  const std::map<IndexTuple, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coef * dx_idx; unsorted indices are sign-normalized and repeated
  /// indices contribute nothing.
  void add_term(IndexTuple idx, const Polynomial& coef);

  /// Value of the form at x on p vectors (determinant convention).
  double evaluate(std::span<const double> x, std::span<const std::vector<double>> vectors) const;

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Rational& c);

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Rational& c) { return a *= c; }
  friend Form operator*(const Rational& c, Form a) { return a *= c; }

  friend bool operator==(const Form& a, const Form& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Form& o) const;

  int n_;
  int p_;
  std::map<IndexTuple, Polynomial> terms_;
};

class VectorField {
 public:
  explicit VectorField(std::vector<Polynomial> components);
  /// Constant coordinate field d/dx_i (1-based).
  static VectorField coordinate(int n, int i);

  int dim() const { return static_cast<int>(components_.size()); }
  const Polynomial& operator[](int i) const { return components_[i]; }
  const std::vector<Polynomial>& components() const { return components_; }

 private:
  std::vector<Polynomial> components_;
};

/// X(f) = sum_i X^i df/dx_i.
Polynomial directional_derivative(const Polynomial& f, const VectorField& X);

Form wedge(const Form& a, const Form& b);
Form exterior_derivative(const Form& w);
/// Inserts X into the first argument slot.
Form interior_product(const Form& w, const VectorField& X);
/// Lie derivative computed as the degree-0 derivation that acts on functions
/// by X and commutes with d: L_X(f dx_I) = X(f) dx_I + f sum_a dx_i1..d(X^ia)..dx_ip.
Form lie_derivative(const Form& w, const VectorField& X);

}  // namespace chen
