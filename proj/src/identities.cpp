#include "chen/identities.hpp"

#include "chen/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace chen {

namespace {

struct IdInfo {
  IdentityId id;
  std::string_view name;
  double tolerance;
};

constexpr IdInfo kIds[] = {
    {IdentityId::CARTAN_2_2, "CARTAN_2_2", 0.0},  {IdentityId::PROP_3_1, "PROP_3_1", 1e-9},
    {IdentityId::COR_3_2_2, "COR_3_2_2", 1e-5},   {IdentityId::PROP_3_3, "PROP_3_3", 1e-9},
    {IdentityId::PROP_3_4, "PROP_3_4", 1e-5},     {IdentityId::PROP_4_2, "PROP_4_2", 1e-5},
    {IdentityId::PROP_4_3, "PROP_4_3", 1e-5},     {IdentityId::PROP_4_4, "PROP_4_4", 1e-5},
    {IdentityId::LEMMA_4_5, "LEMMA_4_5", 1e-5},   {IdentityId::THM_4_6, "THM_4_6", 1e-4},
    {IdentityId::LEMMA_4_7, "LEMMA_4_7", 1e-5},   {IdentityId::THM_4_8, "THM_4_8", 1e-4},
    {IdentityId::THM_4_9, "THM_4_9", 1e-4},       {IdentityId::COR_4_9_1, "COR_4_9_1", 1e-4},
    {IdentityId::PROP_4_10, "PROP_4_10", 1e-8},   {IdentityId::COR_4_10_1, "COR_4_10_1", 1e-8},
    {IdentityId::THM_5_1, "THM_5_1", 1e-4},       {IdentityId::THM_5_2, "THM_5_2", 1e-4},
    {IdentityId::THM_5_3, "THM_5_3", 1e-4},
};

const IdInfo& info(IdentityId id) {
  for (const auto& i : kIds)
    if (i.id == id) return i;
  throw std::invalid_argument("unknown identity");
}

double sgn(int e) { return e % 2 ? -1.0 : 1.0; }

using Forms = std::vector<Form>;
using Times = std::vector<double>;

PathForm zero(int q) {
  return PathForm(q, Provenance::Constant, [](const Path&, Variations) { return 0.0; });
}

PathForm P(const Form& w, double t) { return pullback_at(w, t); }

PathForm wedge3(const PathForm& a, const PathForm& b, const PathForm& c) { return wedge(wedge(a, b), c); }

int degree_sum(const Forms& w, size_t count) {
  int s = 0;
  for (size_t i = 0; i < count; ++i) s += w[i].degree();
  return s;
}

int word_degree(const Forms& w) { return degree_sum(w, w.size()) - static_cast<int>(w.size()); }

template <typename T>
std::vector<T> slice_of(const std::vector<T>& v, size_t from, size_t to) {
  return std::vector<T>(v.begin() + from, v.begin() + to);
}

Forms with_d(const Forms& w, size_t i) {
  Forms out = w;
  out[i] = exterior_derivative(w[i]);
  return out;
}

/// Word with entries i, i+1 replaced by their wedge; the lower limit s_i is dropped.
std::pair<Forms, Times> merged(const Forms& w, const Times& s, size_t i) {
  Forms fw;
  Times fs;
  for (size_t j = 0; j < w.size(); ++j) {
    if (j == i) {
      fw.push_back(wedge(w[i], w[i + 1]));
      fs.push_back(s[i + 1]);
      ++j;
    } else {
      fw.push_back(w[j]);
      fs.push_back(s[j]);
    }
  }
  return {fw, fs};
}

/// Terms of d int w shared by every path-space variant: the d-insertions and
/// the adjacent wedges, each with lower limits s and upper limit t.
PathForm interior_terms(const Forms& w, const Times& s, double t, QuadratureConfig q) {
  const size_t k = w.size();
  PathForm sum = zero(word_degree(w) + 1);
  for (size_t i = 0; i < k; ++i)
    sum = sum + sgn(static_cast<int>(i) + 1 + degree_sum(w, i)) * iterated_integral(with_d(w, i), s, t, q);
  for (size_t i = 0; i + 1 < k; ++i) {
    auto [fw, fs] = merged(w, s, i);
    sum = sum + sgn(static_cast<int>(i) + 1 + degree_sum(w, i + 1) + 1) * iterated_integral(fw, fs, t, q);
  }
  return sum;
}

double max_abs_coefficient(const Form& w) {
  double m = 0.0;
  for (const auto& [idx, f] : w.terms())
    for (const auto& [e, c] : f.terms()) m = std::max(m, std::abs(c.get_d()));
  return m;
}

double eval(const PathForm& f, const Trial& tr) { return f(tr.path, tr.variations); }

double diff(const PathForm& lhs, const PathForm& rhs, const Trial& tr) {
  if (lhs.degree() != rhs.degree()) throw std::logic_error("identity sides have different degrees");
  return std::abs(eval(lhs, tr) - eval(rhs, tr));
}

const Form& need(const std::optional<Form>& f, const char* what) {
  if (!f) throw std::invalid_argument(std::string("trial lacks ") + what);
  return *f;
}

void need_word(const Trial& tr, size_t k) {
  if (tr.word.size() != k) throw std::invalid_argument("identity needs a word of length " + std::to_string(k));
}

void need_times(const Trial& tr, size_t count) {
  if (tr.times.size() < count) throw std::invalid_argument("trial lacks integration limits");
}

/// u -> (w1)_u^* ^ phi_u^* w2: the family used by the parametrized-integral checks.
FormFamily test_family(const Form& w1, const Form& w2) { return wedge(slice_family(w1), pullback_family(w2)); }

/// Boundary points of the based spaces a based identity lives on.
std::pair<bool, bool> pins(IdentityId id) {
  switch (id) {
    case IdentityId::THM_5_1: return {true, false};
    case IdentityId::THM_5_2: return {false, true};
    case IdentityId::THM_5_3: return {true, true};
    default: return {false, false};
  }
}

}  // namespace

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> v;
    for (const auto& i : kIds) v.push_back(i.id);
    return v;
  }();
  return ids;
}

std::string_view to_string(IdentityId id) { return info(id).name; }

IdentityId parse_identity(std::string_view name) {
  for (const auto& i : kIds)
    if (i.name == name) return i.id;
  throw std::invalid_argument("unknown identity '" + std::string(name) + "'");
}

double default_tolerance(IdentityId id) { return info(id).tolerance; }

bool is_based(IdentityId id) {
  return id == IdentityId::THM_5_1 || id == IdentityId::THM_5_2 || id == IdentityId::THM_5_3;
}

void CaseConfig::validate() const {
  if (n < 2 || n > 4) throw std::invalid_argument("dimension must be between 2 and 4");
  if (k && (*k < 1 || *k > 4)) throw std::invalid_argument("word length must be between 1 and 4");
  if (max_degree < 1 || max_degree > 2) throw std::invalid_argument("maximum degree must be 1 or 2");
  if (trials < 0) throw std::invalid_argument("trial count must be non-negative");
  if (tolerance && !(*tolerance >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  quad.validate();
  fd.validate();
}

PathForm d_iterated_general(const Forms& w, const Times& s, double t, QuadratureConfig q) {
  const size_t k = w.size();
  if (k == 0 || s.size() != k) throw std::invalid_argument("general formula needs k >= 1 forms and k lower limits");
  PathForm sum = interior_terms(w, s, t, q);
  for (size_t i = 0; i < k; ++i) {
    const PathForm left = iterated_integral(slice_of(w, 0, i), slice_of(s, 0, i), s[i], q);
    const PathForm right = iterated_integral(slice_of(w, i + 1, k), slice_of(s, i + 1, k), t, q);
    sum = sum + sgn(static_cast<int>(i) + 1 + degree_sum(w, i)) * wedge3(left, P(w[i], s[i]), right);
  }
  const PathForm head = iterated_integral(slice_of(w, 0, k - 1), slice_of(s, 0, k - 1), t, q);
  sum = sum + sgn(degree_sum(w, k - 1) + static_cast<int>(k) + 1) * wedge(head, P(w[k - 1], t));
  return sum;
}

PathForm d_iterated_two(const Form& w1, const Form& w2, double s1, double s2, double t, QuadratureConfig q) {
  const double e = sgn(w1.degree());
  const Form d1 = exterior_derivative(w1), d2 = exterior_derivative(w2);
  return -1.0 * iterated_integral({d1, w2}, {s1, s2}, t, q) + e * iterated_integral({w1, d2}, {s1, s2}, t, q) +
         e * simple_integral(wedge(w1, w2), s2, t, q) - wedge(P(w1, s1), simple_integral(w2, s2, t, q)) +
         e * wedge(simple_integral(w1, s1, s2, q), P(w2, s2)) - e * wedge(simple_integral(w1, s1, t, q), P(w2, t));
}

PathForm d_iterated_three(const Form& w1, const Form& w2, const Form& w3, double s1, double s2, double s3, double t,
                          QuadratureConfig q) {
  const double e1 = sgn(w1.degree()), e12 = sgn(w1.degree() + w2.degree());
  const Times s{s1, s2, s3};
  return -1.0 * iterated_integral({exterior_derivative(w1), w2, w3}, s, t, q) +
         e1 * iterated_integral({w1, exterior_derivative(w2), w3}, s, t, q) -
         e12 * iterated_integral({w1, w2, exterior_derivative(w3)}, s, t, q) +
         e1 * iterated_integral({wedge(w1, w2), w3}, {s2, s3}, t, q) -
         e12 * iterated_integral({w1, wedge(w2, w3)}, {s1, s3}, t, q) -
         wedge(P(w1, s1), iterated_integral({w2, w3}, {s2, s3}, t, q)) +
         e1 * wedge3(simple_integral(w1, s1, s2, q), P(w2, s2), simple_integral(w3, s3, t, q)) -
         e12 * wedge(iterated_integral({w1, w2}, {s1, s2}, s3, q), P(w3, s3)) +
         e12 * wedge(iterated_integral({w1, w2}, {s1, s2}, t, q), P(w3, t));
}

Trial sample_trial(IdentityId id, const CaseConfig& cfg, int index) {
  cfg.validate();
  Rng rng(cfg.seed, {static_cast<std::uint64_t>(index), static_cast<std::uint64_t>(id)});
  const int n = cfg.n;
  const int top = std::min(cfg.max_degree, n);
  Trial tr;
  tr.n = n;

  // Word length, entry degrees and boundary degrees, redrawn until the LHS arity is at most 4.
  size_t k = 0;
  bool has_left = false, has_right = false, lead_d = true;
  switch (id) {
    case IdentityId::CARTAN_2_2: {
      tr.single = random_form(rng, n, rng.integer(0, std::min(3, n)));
      tr.field = random_vector_field(rng, n);
      return tr;
    }
    case IdentityId::PROP_3_1: k = 2; lead_d = false; break;
    case IdentityId::COR_3_2_2: k = 1; break;
    case IdentityId::PROP_3_3: k = 1; lead_d = false; break;
    case IdentityId::PROP_3_4: k = 2; break;
    case IdentityId::PROP_4_2:
    case IdentityId::PROP_4_3:
    case IdentityId::PROP_4_4:
    case IdentityId::LEMMA_4_5: k = 2; lead_d = false; break;
    case IdentityId::THM_4_6: k = 2; break;
    case IdentityId::LEMMA_4_7: k = 3; lead_d = false; break;
    case IdentityId::THM_4_8: k = 3; break;
    case IdentityId::THM_4_9: k = cfg.k.value_or(1 + index % 4); break;
    case IdentityId::COR_4_9_1: k = cfg.k.value_or(1 + index % 3); has_left = has_right = true; break;
    case IdentityId::PROP_4_10:
    case IdentityId::COR_4_10_1: k = 2; lead_d = false; break;
    case IdentityId::THM_5_1: k = cfg.k.value_or(1 + index % 3); has_right = true; break;
    case IdentityId::THM_5_2: k = cfg.k.value_or(1 + index % 3); has_left = true; break;
    case IdentityId::THM_5_3: k = cfg.k.value_or(1 + index % 4); break;
  }

  // Entries that enter only through pullbacks (the second factor of the
  // parametrized families, the last slot of the slice Leibniz rule) may have
  // degree 0; every entry of an iterated-integral word needs degree >= 1.
  std::vector<int> lo(k, 1);
  if (id == IdentityId::PROP_3_4 || id == IdentityId::PROP_4_2 || id == IdentityId::PROP_4_3 ||
      id == IdentityId::PROP_4_4)
    lo[1] = 0;
  std::vector<int> p(k);
  int p0 = 0, pk1 = 0;
  for (int attempt = 0;; ++attempt) {
    for (size_t i = 0; i < k; ++i) p[i] = rng.integer(lo[i], top);
    p0 = has_left ? rng.integer(0, top) : 0;
    pk1 = has_right ? rng.integer(0, top) : 0;
    int arity = p0 + pk1 + (lead_d ? 1 : 0);
    switch (id) {
      case IdentityId::PROP_3_1: arity = p[0] + p[1] - 1; break;
      case IdentityId::COR_3_2_2: arity = p[0]; break;
      case IdentityId::PROP_3_4: arity = p[0] - 1 + p[1] + 1; break;
      case IdentityId::PROP_4_2:
      case IdentityId::PROP_4_3:
      case IdentityId::PROP_4_4:
      case IdentityId::LEMMA_4_5: arity = p[0] - 1 + p[1]; break;
      case IdentityId::LEMMA_4_7: arity = p[0] + p[1] - 2 + p[2]; break;
      default:
        for (int d : p) arity += d - 1;
    }
    if (arity >= 0 && arity <= 4) {
      for (size_t i = 0; i < k; ++i) tr.word.push_back(random_form(rng, n, p[i]));
      if (has_left) tr.left = random_form(rng, n, p0);
      if (has_right) tr.right = random_form(rng, n, pk1);
      tr.path = Path(random_curve(rng, n));
      for (int a = 0; a < arity; ++a) tr.variations.emplace_back(random_curve(rng, n));
      break;
    }
    if (attempt > 1000) throw std::logic_error("could not draw degrees within the arity budget");
  }

  const int ntimes = (id == IdentityId::PROP_3_3) ? 3 : (id == IdentityId::PROP_4_10 || id == IdentityId::COR_4_10_1) ? 5
                                                                                                                      : static_cast<int>(k);
  for (int i = 0; i < ntimes; ++i) tr.times.push_back(rng.unit());
  tr.t = rng.unit();

  if (is_based(id) && cfg.based) {
    const auto [at0, at1] = pins(id);
    BasedConstraint c;
    auto point = [&] {
      std::vector<double> x(n);
      for (double& v : x) v = rng.uniform(-1, 1);
      return x;
    };
    if (at0) c.start = point();
    if (at1) c.end = point();
    tr.path = c.pin(tr.path);
    for (auto& v : tr.variations) v = c.pin(v);
    tr.constraint = c;
  }
  if (is_based(id) || id == IdentityId::COR_4_9_1) {
    std::fill(tr.times.begin(), tr.times.end(), 0.0);
    tr.t = 1.0;
  }
  return tr;
}

double residual(IdentityId id, const Trial& tr, const CaseConfig& cfg) {
  const QuadratureConfig q = cfg.quad;
  const FdConfig fd = cfg.fd;
  const auto& w = tr.word;
  const auto& s = tr.times;
  const double t = tr.t;
  auto d = [&](const PathForm& a) { return pathform_d(a, fd); };

  switch (id) {
    case IdentityId::CARTAN_2_2: {
      const Form& f = need(tr.single, "a form");
      if (!tr.field) throw std::invalid_argument("trial lacks a vector field");
      const VectorField& X = *tr.field;
      Form rhs = interior_product(exterior_derivative(f), X);
      if (f.degree() > 0) rhs = rhs + exterior_derivative(interior_product(f, X));
      return max_abs_coefficient(lie_derivative(f, X) - rhs);
    }
    case IdentityId::PROP_3_1: {
      need_word(tr, 2);
      const PathForm lhs = slice(wedge(w[0], w[1]), t);
      const PathForm rhs =
          wedge(slice(w[0], t), P(w[1], t)) + sgn(w[0].degree()) * wedge(P(w[0], t), slice(w[1], t));
      return diff(lhs, rhs, tr);
    }
    case IdentityId::COR_3_2_2: {
      need_word(tr, 1);
      need_times(tr, 1);
      const PathForm lhs = d(simple_integral(w[0], s[0], t, q));
      const PathForm rhs = -1.0 * simple_integral(exterior_derivative(w[0]), s[0], t, q) - P(w[0], s[0]) + P(w[0], t);
      return diff(lhs, rhs, tr);
    }
    case IdentityId::PROP_3_3: {
      need_word(tr, 1);
      need_times(tr, 3);
      const PathForm lhs = simple_integral(w[0], s[0], t, q);
      const PathForm rhs = simple_integral(w[0], s[0], s[1], q) + simple_integral(w[0], s[1], s[2], q) +
                           simple_integral(w[0], s[2], t, q);
      return diff(lhs, rhs, tr);
    }
    case IdentityId::PROP_3_4: {
      need_word(tr, 2);
      need_times(tr, 1);
      const FormFamily f = test_family(w[0], w[1]);
      const FormFamily df(f.degree() + 1, [f, fd](double u, const Path& p, Variations vs) {
        return pathform_d(f.at(u), fd)(p, vs);
      });
      return diff(d(integrate_family(f, s[0], t, q)), integrate_family(df, s[0], t, q), tr);
    }
    case IdentityId::PROP_4_2: {
      need_word(tr, 2);
      need_times(tr, 1);
      const FormFamily f = test_family(w[0], w[1]);
      return diff(family_derivative(integral_family(f, s[0], q), t, fd), f.at(t), tr);
    }
    case IdentityId::PROP_4_3: {
      need_word(tr, 2);
      need_times(tr, 1);
      const FormFamily f = test_family(w[0], w[1]);
      return diff(integrate_family(derivative_family(f, fd), s[0], t, q), f.at(t) - f.at(s[0]), tr);
    }
    case IdentityId::PROP_4_4: {
      need_word(tr, 2);
      need_times(tr, 1);
      const FormFamily f1 = integral_family(slice_family(w[0]), s[0], q);
      const FormFamily f2 = pullback_family(w[1]);
      const PathForm lhs = family_derivative(wedge(f1, f2), t, fd);
      const PathForm rhs =
          wedge(family_derivative(f1, t, fd), f2.at(t)) + wedge(f1.at(t), family_derivative(f2, t, fd));
      return diff(lhs, rhs, tr);
    }
    case IdentityId::LEMMA_4_5: {
      need_word(tr, 2);
      need_times(tr, 2);
      const PathForm lhs =
          integrate_family(test_family(w[0], w[1]), s[1], t, q) +
          integrate_family(wedge(integral_family(slice_family(w[0]), s[0], q), time_derivative_family(w[1], fd)),
                           s[1], t, q);
      const PathForm rhs = wedge(simple_integral(w[0], s[0], t, q), P(w[1], t)) -
                           wedge(simple_integral(w[0], s[0], s[1], q), P(w[1], s[1]));
      return diff(lhs, rhs, tr);
    }
    case IdentityId::THM_4_6: {
      need_word(tr, 2);
      need_times(tr, 2);
      return diff(d(iterated_integral(w, {s[0], s[1]}, t, q)), d_iterated_two(w[0], w[1], s[0], s[1], t, q), tr);
    }
    case IdentityId::LEMMA_4_7: {
      need_word(tr, 3);
      need_times(tr, 3);
      const FormFamily first =
          wedge(wedge(integral_family(slice_family(w[0]), s[0], q), slice_family(w[1])), pullback_family(w[2]));
      const FormFamily second =
          wedge(iterated_family({w[0], w[1]}, {s[0], s[1]}, q), time_derivative_family(w[2], fd));
      const PathForm lhs = integrate_family(first, s[2], t, q) + integrate_family(second, s[2], t, q);
      const PathForm rhs = wedge(iterated_integral({w[0], w[1]}, {s[0], s[1]}, t, q), P(w[2], t)) -
                           wedge(iterated_integral({w[0], w[1]}, {s[0], s[1]}, s[2], q), P(w[2], s[2]));
      return diff(lhs, rhs, tr);
    }
    case IdentityId::THM_4_8: {
      need_word(tr, 3);
      need_times(tr, 3);
      return diff(d(iterated_integral(w, {s[0], s[1], s[2]}, t, q)),
                  d_iterated_three(w[0], w[1], w[2], s[0], s[1], s[2], t, q), tr);
    }
    case IdentityId::THM_4_9: {
      if (w.empty()) throw std::invalid_argument("identity needs a non-empty word");
      need_times(tr, w.size());
      const Times lower = slice_of(s, 0, w.size());
      return diff(d(iterated_integral(w, lower, t, q)), d_iterated_general(w, lower, t, q), tr);
    }
    case IdentityId::COR_4_9_1: {
      if (w.empty()) throw std::invalid_argument("identity needs a non-empty word");
      const Form& w0 = need(tr.left, "a left boundary form");
      const Form& wr = need(tr.right, "a right boundary form");
      const size_t k = w.size();
      const Times zeros(k, 0.0);
      const int p0 = w0.degree();
      auto I = [&](const Forms& word) { return iterated_integral(word, Times(word.size(), 0.0), 1.0, q); };
      auto frame = [&](const PathForm& mid) { return wedge3(P(w0, 0), mid, P(wr, 1)); };
      const PathForm lhs = d(frame(I(w)));
      PathForm rhs = wedge3(P(exterior_derivative(w0), 0), I(w), P(wr, 1));
      rhs = rhs + sgn(p0) * frame(interior_terms(w, zeros, 1.0, q));
      rhs = rhs - sgn(p0) * wedge3(P(wedge(w0, w[0]), 0), I(slice_of(w, 1, k)), P(wr, 1));
      rhs = rhs + sgn(p0 + degree_sum(w, k - 1) + static_cast<int>(k) + 1) *
                      wedge3(P(w0, 0), I(slice_of(w, 0, k - 1)), P(wedge(w[k - 1], wr), 1));
      rhs = rhs + sgn(p0 + degree_sum(w, k) + static_cast<int>(k)) * wedge3(P(w0, 0), I(w), P(exterior_derivative(wr), 1));
      return diff(lhs, rhs, tr);
    }
    case IdentityId::PROP_4_10: {
      need_word(tr, 2);
      need_times(tr, 5);
      const double s1 = s[0], s2 = s[1], s1p = s[2], s2p = s[3], tp = s[4];
      const PathForm base = iterated_integral(w, {s1, s2}, t, q);
      const double r1 = diff(base,
                             iterated_integral(w, {s1p, s2}, t, q) +
                                 wedge(simple_integral(w[0], s1, s1p, q), simple_integral(w[1], s2, t, q)),
                             tr);
      const double r2 =
          diff(base, iterated_integral(w, {s1, s2}, s2p, q) + iterated_integral(w, {s1, s2p}, t, q), tr);
      const double r3 = diff(base, iterated_integral(w, {s1, s2}, tp, q) + iterated_integral(w, {s1, tp}, t, q), tr);
      return std::max({r1, r2, r3});
    }
    case IdentityId::COR_4_10_1: {
      need_word(tr, 2);
      need_times(tr, 5);
      const double s1 = s[0], s2 = s[1], s1p = s[2], s2p = s[3], tp = s[4];
      const PathForm head = simple_integral(w[0], s1, s1p, q);
      const PathForm rhs = iterated_integral(w, {s1p, s2}, s2p, q) + iterated_integral(w, {s1p, s2p}, tp, q) +
                           iterated_integral(w, {s1p, tp}, t, q) + wedge(head, simple_integral(w[1], s2, s2p, q)) +
                           wedge(head, simple_integral(w[1], s2p, tp, q)) +
                           wedge(head, simple_integral(w[1], tp, t, q));
      return diff(iterated_integral(w, {s1, s2}, t, q), rhs, tr);
    }
    case IdentityId::THM_5_1:
    case IdentityId::THM_5_2:
    case IdentityId::THM_5_3: {
      if (!tr.constraint) throw std::invalid_argument(std::string(to_string(id)) + " needs a based case");
      const auto [at0, at1] = pins(id);
      if (tr.constraint->start.has_value() != at0 || tr.constraint->end.has_value() != at1)
        throw std::invalid_argument("based case pins the wrong endpoints");
      if (w.empty()) throw std::invalid_argument("identity needs a non-empty word");
      const size_t k = w.size();
      const Times zeros(k, 0.0);
      auto I = [&](const Forms& word) { return iterated_integral(word, Times(word.size(), 0.0), 1.0, q); };
      const PathForm inner = interior_terms(w, zeros, 1.0, q);
      if (id == IdentityId::THM_5_3) return diff(d(I(w)), inner, tr);
      if (id == IdentityId::THM_5_1) {
        const Form& wr = need(tr.right, "a right boundary form");
        PathForm rhs = wedge(inner, P(wr, 1));
        rhs = rhs + sgn(degree_sum(w, k - 1) + static_cast<int>(k) + 1) *
                        wedge(I(slice_of(w, 0, k - 1)), P(wedge(w[k - 1], wr), 1));
        rhs = rhs + sgn(degree_sum(w, k) + static_cast<int>(k)) * wedge(I(w), P(exterior_derivative(wr), 1));
        return diff(d(wedge(I(w), P(wr, 1))), rhs, tr);
      }
      const Form& w0 = need(tr.left, "a left boundary form");
      const int p0 = w0.degree();
      PathForm rhs = wedge(P(exterior_derivative(w0), 0), I(w));
      rhs = rhs + sgn(p0) * wedge(P(w0, 0), inner);
      rhs = rhs - sgn(p0) * wedge(P(wedge(w0, w[0]), 0), I(slice_of(w, 1, k)));
      return diff(d(wedge(P(w0, 0), I(w))), rhs, tr);
    }
  }
  throw std::invalid_argument("unknown identity");
}

std::vector<Report> run_suite(const std::vector<IdentityId>& ids, const CaseConfig& cfg) {
  cfg.validate();
  for (auto id : ids)
    if (is_based(id) && !cfg.based)
      throw std::invalid_argument(std::string(to_string(id)) + " needs a based case");
  std::vector<Report> out;
  for (auto id : ids) {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.id = id;
    r.config = cfg;
    r.tolerance = cfg.tolerance.value_or(default_tolerance(id));
    for (int i = 0; i < cfg.trials; ++i) {
      try {
        const double v = residual(id, sample_trial(id, cfg, i), cfg);
        r.residuals.emplace_back(v);
        if (!std::isfinite(v)) {
          r.failures.push_back("trial " + std::to_string(i) + ": non-finite residual");
        } else {
          r.max_residual = std::max(r.max_residual, v);
        }
      } catch (const std::exception& e) {
        r.residuals.emplace_back(std::nullopt);
        r.failures.push_back("trial " + std::to_string(i) + ": " + e.what());
      }
    }
    r.pass = r.failures.empty() && r.max_residual <= r.tolerance;
    if (id == IdentityId::THM_5_1)
      r.notes.push_back("right-hand side checked in its graded-Leibniz form; the undifferentiated copy of the left-hand argument is not a term");
    if (id == IdentityId::COR_4_9_1)
      r.notes.push_back("the term with the pullback of w_k^w_{k+1} at 1 keeps the left boundary factor phi_0^* w_0");
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["identity"] = std::string(to_string(r.id));
  j["trials"] = r.config.trials;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["seed"] = r.config.seed;
  nlohmann::ordered_json c;
  c["n"] = r.config.n;
  if (r.config.k) c["k"] = *r.config.k;
  else c["k"] = nullptr;
  c["max_degree"] = r.config.max_degree;
  c["grid"] = r.config.quad.m;
  c["fd_step"] = r.config.fd.h;
  c["based"] = r.config.based;
  c["convention"] = std::string(kConvention);
  j["config"] = c;
  auto res = nlohmann::ordered_json::array();
  for (const auto& v : r.residuals) {
    if (v && std::isfinite(*v)) res.push_back(*v);
    else res.push_back(nullptr);
  }
  j["residuals"] = res;
  j["failures"] = r.failures;
  j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string report_json(const Report& r) { return to_json(r).dump(2); }

std::string reports_json(const std::vector<Report>& rs, int indent) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(to_json(r));
  return arr.dump(indent);
}

}  // namespace chen
