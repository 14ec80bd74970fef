#include "chen/formdsl.hpp"
#include "chen/forms.hpp"
#include "chen/random.hpp"

#include <gtest/gtest.h>

using namespace chen;

namespace {

Form F(const char* text, int n) { return parse_form(text, n); }

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }

std::vector<double> e(int n, int i) {
  std::vector<double> v(n, 0.0);
  v[i - 1] = 1.0;
  return v;
}

}  // namespace

TEST(Polynomial, Evaluate) {
  Polynomial p = Polynomial::monomial(2, {2, 1}, 1);
  const double a[] = {2, 3};
  EXPECT_EQ(p.evaluate(a), 12);
  EXPECT_EQ(Polynomial(2).evaluate(a), 0);
  const double b[] = {0.5, 0.25};
  EXPECT_EQ((x(2, 1) + x(2, 2)).evaluate(b), 0.75);
}

TEST(Polynomial, Partial) {
  EXPECT_EQ(Polynomial::monomial(2, {2, 1}, 1).partial(1), Polynomial::monomial(2, {1, 1}, 2));
  EXPECT_TRUE(x(2, 1).partial(2).is_zero());
  EXPECT_EQ((x(2, 1) + Rational(3) * x(2, 1) * x(2, 2)).partial(1),
            Polynomial::constant(2, 1) + Rational(3) * x(2, 2));
}

TEST(Form, Evaluate) {
  const double pt[] = {0.3, -1.2};
  const std::vector<std::vector<double>> v12{e(2, 1), e(2, 2)}, v21{e(2, 2), e(2, 1)};
  EXPECT_EQ(F("dx1^dx2", 2).evaluate(pt, v12), 1);
  EXPECT_EQ(F("dx1^dx2", 2).evaluate(pt, v21), -1);
  const double q[] = {3, 0};
  const std::vector<std::vector<double>> v2{e(2, 2)};
  EXPECT_EQ(F("x1 dx2", 2).evaluate(q, v2), 3);
}

TEST(Form, Wedge) {
  EXPECT_EQ(wedge(F("dx1", 2), F("dx2", 2)), F("dx1^dx2", 2));
  EXPECT_TRUE(wedge(F("x1 dx1", 2), F("dx1", 2)).is_zero());
  EXPECT_EQ(wedge(F("dx2", 2), F("dx1", 2)), -F("dx1^dx2", 2));
}

TEST(Form, ExteriorDerivative) {
  EXPECT_EQ(exterior_derivative(F("x1 dx2", 2)), F("dx1^dx2", 2));
  EXPECT_TRUE(exterior_derivative(F("dx1", 2)).is_zero());
  EXPECT_EQ(exterior_derivative(F("x1*x2 dx1", 2)), F("-1*x1 dx1^dx2", 2));
}

TEST(Form, InteriorProduct) {
  EXPECT_EQ(interior_product(F("dx1^dx2", 2), VectorField::coordinate(2, 1)), F("dx2", 2));
  EXPECT_EQ(interior_product(F("dx1^dx2", 2), VectorField::coordinate(2, 2)), -F("dx1", 2));
  const VectorField X({x(2, 2), Polynomial(2)});
  EXPECT_EQ(interior_product(F("x1 dx1", 2), X), F("x1*x2", 2));
}

TEST(Form, LieDerivative) {
  EXPECT_EQ(lie_derivative(F("x1 dx2", 2), VectorField::coordinate(2, 1)), F("dx2", 2));
  const VectorField X({x(2, 2), Polynomial(2)});
  EXPECT_EQ(lie_derivative(F("x1", 2), X), F("x2", 2));
  EXPECT_TRUE(lie_derivative(F("dx1", 2), VectorField::coordinate(2, 1)).is_zero());
}

TEST(Form, ZeroFormAboveTopDegree) {
  const Form top = F("x1 dx1^dx2", 2);
  const Form d = exterior_derivative(top);
  EXPECT_TRUE(d.is_zero());
  EXPECT_EQ(d.degree(), 3);
}

TEST(Form, RandomizedLaws) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(2, 4);
    const int p = rng.integer(0, 3), q = rng.integer(0, 3);
    const Form a = random_form(rng, n, p), b = random_form(rng, n, q), c = random_form(rng, n, q);
    const VectorField X = random_vector_field(rng, n);
    const Rational s = random_rational(rng);

    EXPECT_TRUE(exterior_derivative(exterior_derivative(a)).is_zero());
    EXPECT_EQ(wedge(a, b), ((p * q) % 2 ? Rational(-1) : Rational(1)) * wedge(b, a));
    const Form leibniz = wedge(exterior_derivative(a), b) + ((p % 2) ? Rational(-1) : Rational(1)) *
                                                                 wedge(a, exterior_derivative(b));
    EXPECT_EQ(exterior_derivative(wedge(a, b)), leibniz);
    Form cartan = interior_product(exterior_derivative(a), X);
    if (p > 0) cartan += exterior_derivative(interior_product(a, X));
    EXPECT_EQ(lie_derivative(a, X), cartan);
    EXPECT_EQ(wedge(a, b + s * c), wedge(a, b) + s * wedge(a, c));
    if (q >= 2) EXPECT_TRUE(interior_product(interior_product(b, X), X).is_zero());
  }
}

TEST(Form, EvaluationAlternatesAndIsLinear) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3;
    const Form w = random_form(rng, n, 2);
    std::vector<double> pt(n);
    for (auto& v : pt) v = rng.uniform(-1, 1);
    std::vector<std::vector<double>> vs(2, std::vector<double>(n));
    for (auto& v : vs)
      for (auto& c : v) c = rng.uniform(-1, 1);
    const double a = w.evaluate(pt, vs);
    std::swap(vs[0], vs[1]);
    EXPECT_NEAR(w.evaluate(pt, vs), -a, 1e-12);
    std::swap(vs[0], vs[1]);
    auto scaled = vs;
    for (auto& c : scaled[0]) c *= 3;
    EXPECT_NEAR(w.evaluate(pt, scaled), 3 * a, 1e-12);
  }
}
