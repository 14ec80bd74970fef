#pragma once

#include "chen/forms.hpp"
#include "chen/paths.hpp"

#include <cstdint>
#include <random>

namespace chen {

/// Deterministic stream: mt19937_64 seeded from (seed, stream ids), with
/// doubles built from raw bits so values do not depend on the standard library.
class Rng {
 public:
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

  std::uint64_t bits() { return gen_(); }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return gen_() >> 63; }

 private:
  std::mt19937_64 gen_;
};

/// Rational in [-2, 2] with denominator at most 4.
Rational random_rational(Rng& rng);
/// Polynomial of total degree <= max_degree with up to `terms` monomials.
Polynomial random_polynomial(Rng& rng, int n, int max_degree = 2, int terms = 3);
/// Degree-p form with random polynomial coefficients on every basis element.
Form random_form(Rng& rng, int n, int p);
VectorField random_vector_field(Rng& rng, int n);
/// Each coordinate: polynomial of the given degree with coefficients in [-1, 1]
/// plus c*sin(a*t), c in [-1, 1], a in [1/2, max_frequency].
Curve random_curve(Rng& rng, int n, int poly_degree = 3, double max_frequency = 3.0);

}  // namespace chen
