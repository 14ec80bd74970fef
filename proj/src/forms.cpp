#include "chen/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chen {

int normalize_indices(IndexTuple& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

double determinant(std::span<double> a, int p) {
  switch (p) {
    case 0:
      return 1.0;
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    case 3:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
    default:
      break;
  }
  double det = 1.0;
  for (int c = 0; c < p; ++c) {
    int piv = c;
    for (int r = c + 1; r < p; ++r)
      if (std::abs(a[r * p + c]) > std::abs(a[piv * p + c])) piv = r;
    if (a[piv * p + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < p; ++k) std::swap(a[c * p + k], a[piv * p + k]);
      det = -det;
    }
    det *= a[c * p + c];
    for (int r = c + 1; r < p; ++r) {
      double f = a[r * p + c] / a[c * p + c];
      for (int k = c; k < p; ++k) a[r * p + k] -= f * a[c * p + k];
    }
  }
  return det;
}

Form::Form(int n, int p) : n_(n), p_(p) {
  if (n < 1) throw std::invalid_argument("form dimension must be positive");
  if (p < 0) throw std::invalid_argument("form degree must be non-negative");
}

Form Form::scalar(const Polynomial& f) {
  Form w(f.dim(), 0);
  w.add_term({}, f);
  return w;
}

Form Form::basis(int n, IndexTuple idx, const Polynomial& coef) {
  Form w(n, static_cast<int>(idx.size()));
  w.add_term(std::move(idx), coef);
  return w;
}

void Form::add_term(IndexTuple idx, const Polynomial& coef) {
  if (static_cast<int>(idx.size()) != p_) throw std::invalid_argument("basis arity does not match form degree");
  if (coef.dim() != n_) throw std::invalid_argument("coefficient dimension mismatch");
  for (int i : idx)
    if (i < 1 || i > n_) throw std::out_of_range("form index out of range");
  int sign = normalize_indices(idx);
  if (sign == 0 || coef.is_zero()) return;
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    terms_.emplace(std::move(idx), sign > 0 ? coef : -coef);
    return;
  }
  if (sign > 0)
    it->second += coef;
  else
    it->second -= coef;
  if (it->second.is_zero()) terms_.erase(it);
}

double Form::evaluate(std::span<const double> x, std::span<const std::vector<double>> vectors) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("point dimension mismatch");
  if (static_cast<int>(vectors.size()) != p_) throw std::invalid_argument("form arity mismatch");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("vector dimension mismatch");
  std::vector<double> m(static_cast<size_t>(p_) * p_);
  double sum = 0.0;
  for (const auto& [idx, f] : terms_) {
    for (int a = 0; a < p_; ++a)
      for (int b = 0; b < p_; ++b) m[a * p_ + b] = vectors[b][idx[a] - 1];
    sum += f.evaluate(x) * determinant(m, p_);
  }
  return sum;
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [idx, f] : out.terms_) f = -f;
  return out;
}

void Form::check_compatible(const Form& o) const {
  if (o.n_ != n_) throw std::invalid_argument("form dimension mismatch");
  if (o.p_ != p_) throw std::invalid_argument("form degree mismatch");
}

Form& Form::operator+=(const Form& o) {
  check_compatible(o);
  for (const auto& [idx, f] : o.terms_) add_term(idx, f);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  check_compatible(o);
  for (const auto& [idx, f] : o.terms_) add_term(idx, -f);
  return *this;
}

Form& Form::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, f] : terms_) f *= c;
  return *this;
}

VectorField::VectorField(std::vector<Polynomial> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("vector field needs at least one component");
  const int n = components_.front().dim();
  if (static_cast<int>(components_.size()) != n)
    throw std::invalid_argument("vector field component count must equal dimension");
  for (const auto& c : components_)
    if (c.dim() != n) throw std::invalid_argument("vector field component dimension mismatch");
}

VectorField VectorField::coordinate(int n, int i) {
  std::vector<Polynomial> comps(n, Polynomial(n));
  comps.at(i - 1) = Polynomial::constant(n, 1);
  return VectorField(std::move(comps));
}

Polynomial directional_derivative(const Polynomial& f, const VectorField& X) {
  if (X.dim() != f.dim()) throw std::invalid_argument("vector field dimension mismatch");
  Polynomial out(f.dim());
  for (int i = 1; i <= f.dim(); ++i) out += X[i - 1] * f.partial(i);
  return out;
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("form dimension mismatch");
  Form out(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, fa] : a.terms()) {
    for (const auto& [ib, fb] : b.terms()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), fa * fb);
    }
  }
  return out;
}

Form exterior_derivative(const Form& w) {
  Form out(w.dim(), w.degree() + 1);
  for (const auto& [idx, f] : w.terms()) {
    for (int j = 1; j <= w.dim(); ++j) {
      Polynomial df = f.partial(j);
      if (df.is_zero()) continue;
      IndexTuple jdx{j};
      jdx.insert(jdx.end(), idx.begin(), idx.end());
      out.add_term(std::move(jdx), df);
    }
  }
  return out;
}

Form interior_product(const Form& w, const VectorField& X) {
  if (w.degree() < 1) throw std::invalid_argument("interior product of a 0-form");
  if (X.dim() != w.dim()) throw std::invalid_argument("vector field dimension mismatch");
  Form out(w.dim(), w.degree() - 1);
  for (const auto& [idx, f] : w.terms()) {
    for (size_t a = 0; a < idx.size(); ++a) {
      IndexTuple rest;
      for (size_t b = 0; b < idx.size(); ++b)
        if (b != a) rest.push_back(idx[b]);
      Polynomial c = X[idx[a] - 1] * f;
      out.add_term(std::move(rest), a % 2 == 0 ? c : -c);
    }
  }
  return out;
}

Form lie_derivative(const Form& w, const VectorField& X) {
  if (X.dim() != w.dim()) throw std::invalid_argument("vector field dimension mismatch");
  Form out(w.dim(), w.degree());
  for (const auto& [idx, f] : w.terms()) {
    out.add_term(idx, directional_derivative(f, X));
    for (size_t a = 0; a < idx.size(); ++a) {
      const Polynomial& comp = X[idx[a] - 1];
      for (int j = 1; j <= w.dim(); ++j) {
        Polynomial c = comp.partial(j);
        if (c.is_zero()) continue;
        IndexTuple replaced = idx;
        replaced[a] = j;
        out.add_term(std::move(replaced), f * c);
      }
    }
  }
  return out;
}

}  // namespace chen
