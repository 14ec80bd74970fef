#include "chen/random.hpp"

#include <algorithm>
#include <vector>

namespace chen {

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (auto s : stream) {
    words.push_back(static_cast<std::uint32_t>(s));
    words.push_back(static_cast<std::uint32_t>(s >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  gen_.seed(seq);
}

Rational random_rational(Rng& rng) {
  const int den = rng.integer(1, 4);
  Rational r(rng.integer(-2 * den, 2 * den), den);
  r.canonicalize();
  return r;
}

Polynomial random_polynomial(Rng& rng, int n, int max_degree, int terms) {
  Polynomial p(n);
  const int count = rng.integer(1, terms);
  for (int c = 0; c < count; ++c) {
    Exponents e(n, 0);
    const int deg = rng.integer(0, max_degree);
    for (int d = 0; d < deg; ++d) ++e[rng.integer(0, n - 1)];
    p.add_term(e, random_rational(rng));
  }
  return p;
}

Form random_form(Rng& rng, int n, int p) {
  Form w(n, p);
  if (p > n) return w;
  std::vector<int> mask(n, 0);
  std::fill(mask.end() - p, mask.end(), 1);
  do {
    IndexTuple idx;
    for (int i = 0; i < n; ++i)
      if (mask[i]) idx.push_back(i + 1);
    w = w + Form::basis(n, idx, random_polynomial(rng, n));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return w;
}

VectorField random_vector_field(Rng& rng, int n) {
  std::vector<Polynomial> comps;
  for (int i = 0; i < n; ++i) comps.push_back(random_polynomial(rng, n));
  return VectorField(std::move(comps));
}

Curve random_curve(Rng& rng, int n, int poly_degree, double max_frequency) {
  using K = AnalyticTerm::Kind;
  std::vector<AnalyticFunction> coords;
  for (int i = 0; i < n; ++i) {
    std::vector<AnalyticTerm> terms;
    for (int k = 0; k <= poly_degree; ++k) terms.push_back({K::Power, rng.uniform(-1, 1), static_cast<double>(k)});
    terms.push_back({K::Sin, rng.uniform(-1, 1), rng.uniform(0.5, max_frequency)});
    coords.emplace_back(std::move(terms));
  }
  return Curve::analytic(std::move(coords));
}

}  // namespace chen
