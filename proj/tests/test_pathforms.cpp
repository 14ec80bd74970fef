#include "chen/formdsl.hpp"
#include "chen/pathforms.hpp"
#include "chen/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace chen;

namespace {

Form F(const char* text, int n) { return parse_form(text, n); }
Path P(const char* coords) { return Path::analytic(parse_coordinates(coords)); }
Variation V(const char* coords) { return Variation(Curve::analytic(parse_coordinates(coords))); }

double eval(const PathForm& a, const Path& p, const std::vector<Variation>& vs = {}) { return a(p, vs); }

FormFamily scalar_family(std::function<double(double)> f) {
  return FormFamily(0, [f](double u, const Path&, Variations) { return f(u); });
}

}  // namespace

TEST(PullbackAt, Examples) {
  EXPECT_EQ(eval(pullback_at(F("dx1", 2), 1.0), P("t^2, t"), {V("1, 0")}), 1.0);
  EXPECT_EQ(eval(pullback_at(F("dx1^dx2", 2), 0.5), P("t, t"), {V("1, 0"), V("0, 1")}), 1.0);
  EXPECT_NEAR(eval(pullback_at(F("x1", 2), 0.3), P("t, 0")), 0.3, 1e-15);
}

TEST(Slice, Examples) {
  EXPECT_EQ(eval(slice(F("dx1", 2), 0.5), P("t^2, t")), 1.0);
  EXPECT_EQ(eval(slice(F("dx1^dx2", 2), 0.37), P("t, t"), {V("0, 1")}), 1.0);
  EXPECT_EQ(eval(slice(F("x1*x2 dx1^dx2", 2), 0.37), P("2, 3"), {V("t, 1")}), 0.0);
  EXPECT_THROW(slice(F("x1", 2), 0.5), std::invalid_argument);
}

TEST(TimeDerivativePullback, Examples) {
  EXPECT_NEAR(eval(time_derivative_pullback(F("x1 dx2", 2), 0.4), P("t, t"), {V("0, 1")}), 1.0, 1e-12);
  EXPECT_NEAR(eval(time_derivative_pullback(F("dx1", 2), 0.4), P("t, t"), {V("1, 0")}), 0.0, 1e-12);
  EXPECT_NEAR(eval(time_derivative_pullback(F("x2 dx1", 2), 0.5), P("t, t^2"), {V("1, 0")}), 1.0, 1e-12);
}

TEST(TimeDerivativePullback, SampledFallsBackToDifferences) {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i <= 512; ++i) {
    const double t = i / 512.0;
    pts.push_back({t, t * t});
  }
  const Path p(Curve::sampled(pts));
  for (double t : {0.25, 0.5, 0.75})
    EXPECT_NEAR(eval(time_derivative_pullback(F("x2 dx1", 2), t), p, {V("1, 0")}), 2 * t, 1e-5);
  // Natural end conditions of the spline cost accuracy within a few samples of the ends.
  for (double t : {0.0, 1.0})
    EXPECT_NEAR(eval(time_derivative_pullback(F("x2 dx1", 2), t), p, {V("1, 0")}), 2 * t, 1e-3);
}

TEST(PathFormWedge, Examples) {
  const Path p = P("t, t^2, sin(t)");
  const std::vector<Variation> vs{V("1, t, 0"), V("0, 1, t^2")};
  const PathForm a = pullback_at(F("dx1 + x2 dx3", 3), 0.3), b = slice(F("dx2^dx3 - x1 dx1^dx2", 3), 0.6);
  const double ab = eval(wedge(a, b), p, vs);
  EXPECT_NEAR(ab, eval(a, p, {vs[0]}) * eval(b, p, {vs[1]}) - eval(a, p, {vs[1]}) * eval(b, p, {vs[0]}), 1e-15);
  EXPECT_NEAR(eval(wedge(PathForm::constant(2.5), a), p, {vs[0]}), 2.5 * eval(a, p, {vs[0]}), 1e-15);
}

TEST(PathFormWedge, GradedCommutative) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    const Form w1 = random_form(rng, n, 2), w2 = random_form(rng, n, 2);
    const PathForm a = slice(w1, rng.unit()), b = pullback_at(w2, rng.unit());
    const Path p(random_curve(rng, n));
    std::vector<Variation> vs;
    for (int i = 0; i < 3; ++i) vs.emplace_back(random_curve(rng, n));
    const double ab = eval(wedge(a, b), p, vs), ba = eval(wedge(b, a), p, vs);
    EXPECT_NEAR(ab, ba, 1e-9 * (1 + std::abs(ab)));
    const PathForm c = slice(w2, rng.unit());
    const std::vector<Variation> two(vs.begin(), vs.begin() + 2);
    const double ac = eval(wedge(a, c), p, two), ca = eval(wedge(c, a), p, two);
    EXPECT_NEAR(ac, -ca, 1e-9 * (1 + std::abs(ac)));
  }
}

TEST(IntegrateFamily, Examples) {
  const Path p = P("t, t");
  EXPECT_NEAR(eval(integrate_family(scalar_family([](double) { return 5.0; }), 0, 1), p), 5.0, 1e-14);
  EXPECT_EQ(eval(integrate_family(scalar_family([](double u) { return u; }), 0.4, 0.4), p), 0.0);
  EXPECT_NEAR(eval(integrate_family(scalar_family([](double u) { return u; }), 0, 1), p), 0.5, 1e-10);
}

TEST(SimpleIntegral, Examples) {
  EXPECT_NEAR(eval(simple_integral(F("dx1", 2), 0, 1), P("t^2, t")), 1.0, 1e-9);
  const Form df = exterior_derivative(F("x1*x2", 2));
  EXPECT_NEAR(eval(simple_integral(df, 0, 1), P("t, t")), 1.0, 1e-9);
  EXPECT_NEAR(eval(simple_integral(F("x2 dx1", 2), 0, 1), P("1, 2")), 0.0, 1e-15);
}

TEST(IteratedIntegral, Examples) {
  const std::vector<Form> w{F("dx1", 2), F("dx2", 2)};
  EXPECT_NEAR(eval(iterated_integral(w, {0, 0}, 1), P("t, t")), 0.5, 1e-8);
  EXPECT_NEAR(eval(iterated_integral(w, {0, 0}, 1), P("t, t^2")), 2.0 / 3.0, 1e-8);
  EXPECT_EQ(eval(iterated_integral({}, {}, 0.3), P("t, t")), 1.0);
  EXPECT_EQ(iterated_integral({}, {}, 0.3).degree(), 0);
  EXPECT_EQ(iterated_integral({F("dx1^dx2", 2), F("dx1", 2)}, {0, 0}, 1).degree(), 1);
}

TEST(IteratedIntegral, SingleFormIsSimpleIntegral) {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const Form w = random_form(rng, 3, 2);
    const Path p(random_curve(rng, 3));
    const std::vector<Variation> vs{Variation(random_curve(rng, 3))};
    const double s = rng.unit(), t = rng.unit();
    EXPECT_NEAR(eval(iterated_integral({w}, {s}, t), p, vs), eval(simple_integral(w, s, t), p, vs), 1e-12);
  }
}

TEST(IteratedIntegral, FourthOrderInGrid) {
  const Path p = P("sin(3*t), t^2");
  const double exact = 2 * (std::sin(3.0) / 9 - std::cos(3.0) / 3);
  const std::vector<Form> w{F("dx1", 2), F("dx2", 2)};
  double prev = 0;
  for (int m : {64, 128, 256}) {
    const double err = std::abs(eval(iterated_integral(w, {0, 0}, 1, {m}), p) - exact);
    if (prev > 0) EXPECT_NEAR(prev / err, 16.0, 1.5);
    prev = err;
  }
}

TEST(IteratedIntegral, AlternatesInVariations) {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Form> w{random_form(rng, 3, 2), random_form(rng, 3, 2), random_form(rng, 3, 1)};
    const Path p(random_curve(rng, 3));
    std::vector<Variation> vs{Variation(random_curve(rng, 3)), Variation(random_curve(rng, 3))};
    const PathForm I = iterated_integral(w, {0.1, 0.2, 0.0}, 0.9);
    const double a = eval(I, p, vs);
    std::swap(vs[0], vs[1]);
    EXPECT_NEAR(eval(I, p, vs), -a, 1e-9 * (1 + std::abs(a)));
  }
}

TEST(FamilyDerivative, Examples) {
  const Path p = P("t, t");
  EXPECT_NEAR(eval(family_derivative(scalar_family([](double u) { return u * u; }), 0.5), p), 1.0, 1e-6);
  EXPECT_NEAR(eval(family_derivative(scalar_family([](double) { return 3.0; }), 0.5), p), 0.0, 1e-10);
  const Form w = F("x2 dx1^dx2 + dx2^dx3", 3);
  const Path q = P("t, t^2, 1 - t");
  const std::vector<Variation> vs{V("1, t, t^2")};
  const FormFamily I = FormFamily::from_map(1, [&](double u) { return simple_integral(w, 0, u); });
  for (double t : {0.2, 0.6})
    EXPECT_NEAR(eval(family_derivative(I, t), q, vs), eval(slice(w, t), q, vs), 1e-6);
}

TEST(PathFormD, Examples) {
  const PathForm end_x1(0, Provenance::Pullback, [](const Path& p, Variations) { return p(1.0)[0]; });
  EXPECT_NEAR(eval(pathform_d(end_x1), P("t, t"), {V("1, 0")}), 1.0, 1e-8);
  EXPECT_NEAR(eval(pathform_d(simple_integral(F("dx1", 2), 0, 1)), P("t, t"), {V("t, 0")}), 1.0, 1e-6);
  EXPECT_NEAR(eval(pathform_d(PathForm::constant(4)), P("t, t"), {V("t, 0")}), 0.0, 1e-10);
  EXPECT_EQ(pathform_d(slice(F("dx1^dx2", 2), 0.5)).degree(), 2);
  EXPECT_EQ(to_string(pathform_d(PathForm::constant(4)).provenance()), "fd-derivative");
}

TEST(PathForm, ArityChecked) {
  const PathForm a = slice(F("dx1^dx2", 2), 0.5);
  EXPECT_THROW(eval(a, P("t, t")), std::invalid_argument);
  EXPECT_THROW(eval(a, P("t, t"), {V("1, 0, 0")}), std::invalid_argument);
  EXPECT_THROW(a + PathForm::constant(1), std::invalid_argument);
}

TEST(Config, Validation) {
  EXPECT_THROW(QuadratureConfig{63}.validate(), std::invalid_argument);
  EXPECT_THROW(QuadratureConfig{32}.validate(), std::invalid_argument);
  EXPECT_NO_THROW(QuadratureConfig{64}.validate());
  EXPECT_THROW(FdConfig{0.0}.validate(), std::invalid_argument);
  EXPECT_THROW(FdConfig{0.2}.validate(), std::invalid_argument);
}

TEST(Shuffles, CountAndSigns) {
  EXPECT_EQ(shuffles(2, 2).size(), 6u);
  EXPECT_EQ(shuffles(0, 3).size(), 1u);
  int sum = 0;
  for (const auto& s : shuffles(1, 1)) sum += s.sign;
  EXPECT_EQ(sum, 0);
}
