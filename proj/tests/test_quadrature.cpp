#include "chen/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace chen;

namespace {

std::vector<double> sample(int m, double (*f)(double)) {
  std::vector<double> s(m + 1);
  for (int i = 0; i <= m; ++i) s[i] = f(static_cast<double>(i) / m);
  return s;
}

}  // namespace

TEST(CumulativeSimpson, ExactOnCubics) {
  const CumulativeSimpson c(sample(64, [](double u) { return 4 * u * u * u - u + 2; }));
  for (int i = 0; i <= 64; i += 2) {
    const double u = i / 64.0;
    EXPECT_NEAR(c.node(i), u * u * u * u - u * u / 2 + 2 * u, 1e-14);
  }
  EXPECT_NEAR(c.integral(0, 1), 1.0 - 0.5 + 2.0, 1e-14);
}

TEST(CumulativeSimpson, PartialIntervalsAreQuadraticExact) {
  const CumulativeSimpson c(sample(64, [](double u) { return u; }));
  EXPECT_NEAR(c.at(0.3), 0.045, 1e-15);
  EXPECT_NEAR(c.integral(0.7, 0.2), (0.04 - 0.49) / 2, 1e-15);
  EXPECT_EQ(c.integral(0.4, 0.4), 0.0);
}

TEST(CumulativeSimpson, FourthOrder) {
  auto f = [](double u) { return std::exp(u) * std::sin(5 * u); };
  const double exact = (std::exp(1.0) * (std::sin(5.0) - 5 * std::cos(5.0)) + 5) / 26;
  double prev = 0;
  for (int m : {64, 128, 256}) {
    std::vector<double> s(m + 1);
    for (int i = 0; i <= m; ++i) s[i] = f(static_cast<double>(i) / m);
    const double err = std::abs(CumulativeSimpson(s).integral(0, 1) - exact);
    if (prev > 0) EXPECT_NEAR(prev / err, 16.0, 1.0);
    prev = err;
  }
}

TEST(CumulativeSimpson, RejectsOddGrid) { EXPECT_THROW(CumulativeSimpson(std::vector<double>(8, 1.0)), std::invalid_argument); }
