#include "chen/polynomial.hpp"

#include <stdexcept>

namespace chen {

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("polynomial dimension must be positive");
}

Polynomial Polynomial::constant(int n, const Rational& c) {
  Polynomial p(n);
  p.add_term(Exponents(n, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("variable index out of range");
  Exponents e(n, 0);
  e[i - 1] = 1;
  Polynomial p(n);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(int n, Exponents e, const Rational& c) {
  Polynomial p(n);
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (unsigned k : terms_.begin()->first)
    if (k != 0) return false;
  return true;
}

int Polynomial::total_degree() const {
  int best = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (unsigned k : e) d += static_cast<int>(k);
    best = std::max(best, d);
  }
  return best;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_)
    throw std::invalid_argument("exponent vector length does not match dimension");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("point dimension does not match polynomial");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double v = c.get_d();
    for (int i = 0; i < n_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) v *= x[i];
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::partial(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("partial derivative index out of range");
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[i - 1] == 0) continue;
    Exponents f = e;
    f[i - 1] -= 1;
    out.add_term(f, c * e[i - 1]);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

void Polynomial::check_same_dim(const Polynomial& o) const {
  if (o.n_ != n_) throw std::invalid_argument("polynomial dimension mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_dim(b);
  Polynomial out(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += c.get_str();
    for (int i = 0; i < p.dim(); ++i) {
      if (e[i] == 0) continue;
      out += "*x" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

}  // namespace chen
