#include "chen/pathforms.hpp"

#include "chen/quadrature.hpp"
#include "compiled_form.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace chen {

void QuadratureConfig::validate() const {
  if (m < 64 || m % 2 != 0) throw std::invalid_argument("quadrature subdivisions must be even and >= 64");
}

void FdConfig::validate() const {
  if (!(h > 0.0 && h < 0.1)) throw std::invalid_argument("finite-difference step must lie in (0, 0.1)");
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Pullback: return "pullback";
    case Provenance::Slice: return "slice";
    case Provenance::Wedge: return "wedge";
    case Provenance::Integral: return "integral";
    case Provenance::Iterated: return "iterated";
    case Provenance::FdDerivative: return "fd-derivative";
    case Provenance::Constant: return "constant";
    case Provenance::Sum: return "sum";
    case Provenance::Scaled: return "scaled";
  }
  return "?";
}

namespace {

void check_time(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("time outside the unit interval");
}

int inversions(unsigned a, unsigned b) {
  int count = 0;
  for (unsigned x = a; x; x &= x - 1) {
    const int i = std::countr_zero(x);
    count += std::popcount(b & ((1u << i) - 1));
  }
  return count;
}

std::vector<Variation> pick(Variations vs, const std::vector<int>& idx) {
  std::vector<Variation> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(vs[i]);
  return out;
}

bool all_analytic(const Path& p, Variations vs) {
  if (!p.curve().is_analytic()) return false;
  for (const auto& v : vs)
    if (!v.curve().is_analytic()) return false;
  return true;
}

double node(int i, int m) { return static_cast<double>(i) / m; }

/// Path position, velocity and variation values at every node of the grid.
struct GridSamples {
  int m;
  int n;
  std::vector<double> x;
  std::vector<double> dx;
  std::vector<std::vector<double>> v;

  GridSamples(int m_, const Path& p, Variations vs) : m(m_), n(p.dim()) {
    x.resize(static_cast<size_t>(m + 1) * n);
    dx.resize(x.size());
    v.assign(vs.size(), std::vector<double>(x.size()));
    for (int i = 0; i <= m; ++i) {
      const double u = node(i, m);
      p.curve().value(u, std::span<double>(&x[i * n], n));
      p.curve().derivative(u, std::span<double>(&dx[i * n], n));
      for (size_t a = 0; a < vs.size(); ++a) vs[a].curve().value(u, std::span<double>(&v[a][i * n], n));
    }
  }
  const double* pos(int i) const { return &x[i * n]; }
  const double* vel(int i) const { return &dx[i * n]; }
  const double* var(size_t a, int i) const { return &v[a][i * n]; }
};

void check_dims(const Form& w, const Path& p, Variations vs) {
  if (w.dim() != p.dim()) throw std::invalid_argument("form and path dimensions differ");
  for (const auto& v : vs)
    if (v.dim() != p.dim()) throw std::invalid_argument("variation and path dimensions differ");
}

/// Value of w at gamma(t) on (lead?, V_1(t), ...), with lead = gamma'(t) when set.
double eval_at(const detail::CompiledForm& w, const Path& p, Variations vs, double t, bool lead_velocity) {
  const int n = p.dim();
  std::vector<double> x(n), dx(n);
  std::vector<std::vector<double>> vals(vs.size(), std::vector<double>(n));
  p.curve().value(t, x);
  std::vector<const double*> ptrs;
  if (lead_velocity) {
    p.curve().derivative(t, dx);
    ptrs.push_back(dx.data());
  }
  for (size_t a = 0; a < vs.size(); ++a) {
    vs[a].curve().value(t, vals[a]);
    ptrs.push_back(vals[a].data());
  }
  return w.eval(x.data(), ptrs.data());
}

template <typename F>
double fd_derivative(F&& f, double t, double h) {
  if (t - h >= 0.0 && t + h <= 1.0) return (f(t + h) - f(t - h)) / (2 * h);
  if (t - h < 0.0) return (-3 * f(t) + 4 * f(t + h) - f(t + 2 * h)) / (2 * h);
  return (3 * f(t) - 4 * f(t - h) + f(t - 2 * h)) / (2 * h);
}

double time_derivative_value(const detail::CompiledForm& w, const Path& p, Variations vs, double t, double h) {
  if (!all_analytic(p, vs)) return fd_derivative([&](double u) { return eval_at(w, p, vs, u, false); }, t, h);
  const auto x = p.curve().value(t);
  const auto dx = p.curve().derivative(t);
  std::vector<std::vector<double>> v, dv;
  for (const auto& var : vs) {
    v.push_back(var.curve().value(t));
    dv.push_back(var.curve().derivative(t));
  }
  std::vector<const double*> ptrs;
  for (const auto& e : v) ptrs.push_back(e.data());
  double sum = w.eval_coef_derivative(x.data(), dx.data(), ptrs.data());
  for (size_t a = 0; a < vs.size(); ++a) {
    ptrs[a] = dv[a].data();
    sum += w.eval(x.data(), ptrs.data());
    ptrs[a] = v[a].data();
  }
  return sum;
}

/// Grid values of u -> int_{s_1..s_k}^u w_1...w_k on the full variation set.
struct IteratedResult {
  CumulativeSimpson c;
  double base;
  double at(double t) const { return c.at(t) - base; }
  std::vector<double> nodes() const {
    std::vector<double> out = c.nodes();
    for (double& x : out) x -= base;
    return out;
  }
};

IteratedResult iterate(const std::vector<detail::CompiledForm>& forms, const std::vector<double>& lower, int m,
                       const Path& p, Variations vs) {
  const int q = static_cast<int>(vs.size());
  if (q > 16) throw std::invalid_argument("too many variations");
  const GridSamples g(m, p, vs);
  const unsigned full = (1u << q) - 1;

  std::map<unsigned, std::vector<double>> prev{{0u, std::vector<double>(m + 1, 1.0)}};
  int prev_deg = 0;
  std::optional<IteratedResult> last;
  std::vector<const double*> ptrs;

  for (size_t j = 0; j < forms.size(); ++j) {
    const auto& w = forms[j];
    const int pj = w.degree();
    const int deg = prev_deg + pj - 1;

    std::map<unsigned, std::vector<double>> slices;
    for (unsigned b = 0; b <= full; ++b) {
      if (std::popcount(b) != pj - 1) continue;
      std::vector<double> vals(m + 1);
      for (int i = 0; i <= m; ++i) {
        ptrs.clear();
        ptrs.push_back(g.vel(i));
        for (int a = 0; a < q; ++a)
          if (b >> a & 1u) ptrs.push_back(g.var(a, i));
        vals[i] = w.eval(g.pos(i), ptrs.data());
      }
      slices.emplace(b, std::move(vals));
    }

    std::map<unsigned, std::vector<double>> next;
    for (unsigned s = 0; s <= full; ++s) {
      if (std::popcount(s) != deg) continue;
      std::vector<double> integrand(m + 1, 0.0);
      for (const auto& [a, fa] : prev) {
        if ((a & s) != a) continue;
        const unsigned b = s & ~a;
        const auto it = slices.find(b);
        if (it == slices.end()) continue;
        const double sign = inversions(a, b) % 2 ? -1.0 : 1.0;
        const auto& fb = it->second;
        for (int i = 0; i <= m; ++i) integrand[i] += sign * fa[i] * fb[i];
      }
      IteratedResult r{CumulativeSimpson(std::move(integrand)), 0.0};
      r.base = r.c.at(lower[j]);
      if (j + 1 == forms.size()) {
        last.emplace(std::move(r));
      } else {
        next.emplace(s, r.nodes());
      }
    }
    prev = std::move(next);
    prev_deg = deg;
  }
  return std::move(*last);
}

struct IteratedSpec {
  std::vector<detail::CompiledForm> compiled;
  std::vector<double> lower;
  int degree = 0;
  int dim = 0;
};

std::shared_ptr<const IteratedSpec> make_iterated(const std::vector<Form>& forms, const std::vector<double>& lower) {
  if (forms.size() != lower.size()) throw std::invalid_argument("iterated integral needs one lower limit per form");
  auto spec = std::make_shared<IteratedSpec>();
  int degree = 0;
  for (size_t j = 0; j < forms.size(); ++j) {
    if (forms[j].degree() < 1) throw std::invalid_argument("iterated integral of a 0-form");
    if (j > 0 && forms[j].dim() != forms[0].dim()) throw std::invalid_argument("forms of different dimensions");
    check_time(lower[j]);
    degree += forms[j].degree() - 1;
    spec->compiled.emplace_back(forms[j]);
  }
  spec->lower = lower;
  spec->degree = degree;
  spec->dim = forms.empty() ? 0 : forms[0].dim();
  return spec;
}

void check_iterated_args(const IteratedSpec& s, const Path& p, Variations vs) {
  if (p.dim() != s.dim) throw std::invalid_argument("form and path dimensions differ");
  if (static_cast<int>(vs.size()) != s.degree) throw std::invalid_argument("wrong number of variations for iterated integral");
  for (const auto& v : vs)
    if (v.dim() != p.dim()) throw std::invalid_argument("variation and path dimensions differ");
}

}  // namespace

const std::vector<Shuffle>& shuffles(int p, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Shuffle>> cache;
  std::lock_guard lock(mu);
  auto [it, fresh] = cache.try_emplace({p, q});
  if (fresh) {
    const int n = p + q;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != p) continue;
      Shuffle s;
      for (int i = 0; i < n; ++i) (mask >> i & 1u ? s.first : s.second).push_back(i);
      s.sign = inversions(mask, ((1u << n) - 1) & ~mask) % 2 ? -1 : 1;
      it->second.push_back(std::move(s));
    }
  }
  return it->second;
}

PathForm::PathForm(int degree, Provenance tag, Evaluator f)
    : degree_(degree), tag_(tag), f_(std::make_shared<const Evaluator>(std::move(f))) {
  if (degree < 0) throw std::invalid_argument("negative path-form degree");
}

PathForm PathForm::constant(double c) {
  return PathForm(0, Provenance::Constant, [c](const Path&, Variations) { return c; });
}

double PathForm::operator()(const Path& p, Variations vs) const {
  if (static_cast<int>(vs.size()) != degree_)
    throw std::invalid_argument("expected " + std::to_string(degree_) + " variations, got " +
                                std::to_string(vs.size()));
  for (const auto& v : vs)
    if (v.dim() != p.dim()) throw std::invalid_argument("variation and path dimensions differ");
  return (*f_)(p, vs);
}

PathForm operator+(const PathForm& a, const PathForm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("sum of path forms of different degrees");
  return PathForm(a.degree(), Provenance::Sum, [a, b](const Path& p, Variations vs) { return a(p, vs) + b(p, vs); });
}

PathForm operator-(const PathForm& a, const PathForm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("difference of path forms of different degrees");
  return PathForm(a.degree(), Provenance::Sum, [a, b](const Path& p, Variations vs) { return a(p, vs) - b(p, vs); });
}

PathForm operator*(double c, const PathForm& a) {
  return PathForm(a.degree(), Provenance::Scaled, [c, a](const Path& p, Variations vs) { return c * a(p, vs); });
}

PathForm wedge(const PathForm& a, const PathForm& b) {
  const int qa = a.degree(), qb = b.degree();
  return PathForm(qa + qb, Provenance::Wedge, [a, b, qa, qb](const Path& p, Variations vs) {
    double sum = 0.0;
    for (const auto& s : shuffles(qa, qb)) {
      const auto va = pick(vs, s.first);
      const auto vb = pick(vs, s.second);
      sum += s.sign * a(p, va) * b(p, vb);
    }
    return sum;
  });
}

FormFamily::FormFamily(int degree, Pointwise f, Sampler s)
    : degree_(degree), f_(std::make_shared<const Pointwise>(std::move(f))) {
  if (s) s_ = std::make_shared<const Sampler>(std::move(s));
}

FormFamily FormFamily::from_map(int degree, std::function<PathForm(double)> map) {
  return FormFamily(degree, [degree, map](double u, const Path& p, Variations vs) {
    const PathForm f = map(u);
    if (f.degree() != degree) throw std::invalid_argument("family degree changes with the parameter");
    return f(p, vs);
  });
}

double FormFamily::operator()(double u, const Path& p, Variations vs) const {
  check_time(u);
  if (static_cast<int>(vs.size()) != degree_) throw std::invalid_argument("wrong number of variations for family");
  return (*f_)(u, p, vs);
}

std::vector<double> FormFamily::sample(int m, const Path& p, Variations vs) const {
  if (static_cast<int>(vs.size()) != degree_) throw std::invalid_argument("wrong number of variations for family");
  if (s_) return (*s_)(m, p, vs);
  std::vector<double> out(m + 1);
  for (int i = 0; i <= m; ++i) out[i] = (*f_)(node(i, m), p, vs);
  return out;
}

PathForm FormFamily::at(double u) const {
  check_time(u);
  const FormFamily self = *this;
  return PathForm(degree_, Provenance::Constant, [self, u](const Path& p, Variations vs) { return self(u, p, vs); });
}

FormFamily wedge(const FormFamily& a, const FormFamily& b) {
  const int qa = a.degree(), qb = b.degree();
  auto pointwise = [a, b, qa, qb](double u, const Path& p, Variations vs) {
    double sum = 0.0;
    for (const auto& s : shuffles(qa, qb)) sum += s.sign * a(u, p, pick(vs, s.first)) * b(u, p, pick(vs, s.second));
    return sum;
  };
  auto sampler = [a, b, qa, qb](int m, const Path& p, Variations vs) {
    std::vector<double> out(m + 1, 0.0);
    for (const auto& s : shuffles(qa, qb)) {
      const auto fa = a.sample(m, p, pick(vs, s.first));
      const auto fb = b.sample(m, p, pick(vs, s.second));
      for (int i = 0; i <= m; ++i) out[i] += s.sign * fa[i] * fb[i];
    }
    return out;
  };
  return FormFamily(qa + qb, pointwise, sampler);
}

FormFamily operator+(const FormFamily& a, const FormFamily& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("sum of families of different degrees");
  return FormFamily(
      a.degree(), [a, b](double u, const Path& p, Variations vs) { return a(u, p, vs) + b(u, p, vs); },
      [a, b](int m, const Path& p, Variations vs) {
        auto out = a.sample(m, p, vs);
        const auto fb = b.sample(m, p, vs);
        for (size_t i = 0; i < out.size(); ++i) out[i] += fb[i];
        return out;
      });
}

FormFamily operator*(double c, const FormFamily& a) {
  return FormFamily(
      a.degree(), [c, a](double u, const Path& p, Variations vs) { return c * a(u, p, vs); },
      [c, a](int m, const Path& p, Variations vs) {
        auto out = a.sample(m, p, vs);
        for (double& x : out) x *= c;
        return out;
      });
}

namespace {

FormFamily grid_family(const Form& w, bool lead_velocity) {
  const int degree = w.degree() - (lead_velocity ? 1 : 0);
  auto cw = std::make_shared<const detail::CompiledForm>(w);
  auto pointwise = [w, cw, lead_velocity](double u, const Path& p, Variations vs) {
    check_dims(w, p, vs);
    return eval_at(*cw, p, vs, u, lead_velocity);
  };
  auto sampler = [w, cw, lead_velocity](int m, const Path& p, Variations vs) {
    check_dims(w, p, vs);
    const GridSamples g(m, p, vs);
    std::vector<double> out(m + 1);
    std::vector<const double*> ptrs;
    for (int i = 0; i <= m; ++i) {
      ptrs.clear();
      if (lead_velocity) ptrs.push_back(g.vel(i));
      for (size_t a = 0; a < vs.size(); ++a) ptrs.push_back(g.var(a, i));
      out[i] = cw->eval(g.pos(i), ptrs.data());
    }
    return out;
  };
  return FormFamily(degree, pointwise, sampler);
}

}  // namespace

FormFamily pullback_family(const Form& w) { return grid_family(w, false); }

FormFamily slice_family(const Form& w) {
  if (w.degree() < 1) throw std::invalid_argument("slice of a 0-form");
  return grid_family(w, true);
}

FormFamily time_derivative_family(const Form& w, FdConfig fd) {
  fd.validate();
  auto cw = std::make_shared<const detail::CompiledForm>(w);
  return FormFamily(w.degree(), [w, cw, fd](double u, const Path& p, Variations vs) {
    check_dims(w, p, vs);
    return time_derivative_value(*cw, p, vs, u, fd.h);
  });
}

FormFamily integral_family(const FormFamily& f, double s, QuadratureConfig q) {
  q.validate();
  check_time(s);
  auto pointwise = [f, s, q](double u, const Path& p, Variations vs) {
    const CumulativeSimpson c(f.sample(q.m, p, vs));
    return c.at(u) - c.at(s);
  };
  auto sampler = [f, s, q](int m, const Path& p, Variations vs) {
    const CumulativeSimpson c(f.sample(q.m, p, vs));
    const double base = c.at(s);
    std::vector<double> out(m + 1);
    for (int i = 0; i <= m; ++i) out[i] = (m == q.m ? c.node(i) : c.at(node(i, m))) - base;
    return out;
  };
  return FormFamily(f.degree(), pointwise, sampler);
}

FormFamily iterated_family(std::vector<Form> forms, std::vector<double> lower, QuadratureConfig q) {
  q.validate();
  auto spec = make_iterated(forms, lower);
  if (forms.empty()) {
    return FormFamily(
        0, [](double, const Path&, Variations) { return 1.0; },
        [](int m, const Path&, Variations) { return std::vector<double>(m + 1, 1.0); });
  }
  auto pointwise = [spec, q](double u, const Path& p, Variations vs) {
    check_iterated_args(*spec, p, vs);
    return iterate(spec->compiled, spec->lower, q.m, p, vs).at(u);
  };
  auto sampler = [spec, q](int m, const Path& p, Variations vs) {
    check_iterated_args(*spec, p, vs);
    const auto r = iterate(spec->compiled, spec->lower, q.m, p, vs);
    if (m == q.m) return r.nodes();
    std::vector<double> out(m + 1);
    for (int i = 0; i <= m; ++i) out[i] = r.at(node(i, m));
    return out;
  };
  return FormFamily(spec->degree, pointwise, sampler);
}

FormFamily derivative_family(const FormFamily& f, FdConfig fd) {
  fd.validate();
  return FormFamily(f.degree(), [f, fd](double u, const Path& p, Variations vs) {
    return fd_derivative([&](double v) { return f(v, p, vs); }, u, fd.h);
  });
}

PathForm pullback_at(const Form& w, double t) {
  check_time(t);
  auto cw = std::make_shared<const detail::CompiledForm>(w);
  return PathForm(w.degree(), Provenance::Pullback, [w, cw, t](const Path& p, Variations vs) {
    check_dims(w, p, vs);
    return eval_at(*cw, p, vs, t, false);
  });
}

PathForm slice(const Form& w, double t) {
  if (w.degree() < 1) throw std::invalid_argument("slice of a 0-form");
  check_time(t);
  auto cw = std::make_shared<const detail::CompiledForm>(w);
  return PathForm(w.degree() - 1, Provenance::Slice, [w, cw, t](const Path& p, Variations vs) {
    check_dims(w, p, vs);
    return eval_at(*cw, p, vs, t, true);
  });
}

PathForm time_derivative_pullback(const Form& w, double t, FdConfig fd) {
  check_time(t);
  fd.validate();
  auto cw = std::make_shared<const detail::CompiledForm>(w);
  return PathForm(w.degree(), Provenance::FdDerivative, [w, cw, t, fd](const Path& p, Variations vs) {
    check_dims(w, p, vs);
    return time_derivative_value(*cw, p, vs, t, fd.h);
  });
}

PathForm integrate_family(const FormFamily& f, double s, double t, QuadratureConfig q) {
  check_time(s);
  check_time(t);
  q.validate();
  return PathForm(f.degree(), Provenance::Integral, [f, s, t, q](const Path& p, Variations vs) {
    if (s == t) return 0.0;
    const CumulativeSimpson c(f.sample(q.m, p, vs));
    return c.at(t) - c.at(s);
  });
}

PathForm simple_integral(const Form& w, double s, double t, QuadratureConfig q) {
  if (w.degree() < 1) throw std::invalid_argument("integral of a 0-form");
  PathForm it = iterated_integral({w}, {s}, t, q);
  return PathForm(it.degree(), Provenance::Integral, [it](const Path& p, Variations vs) { return it(p, vs); });
}

PathForm iterated_integral(std::vector<Form> forms, std::vector<double> lower, double t, QuadratureConfig q) {
  check_time(t);
  q.validate();
  auto spec = make_iterated(forms, lower);
  if (forms.empty()) return PathForm(0, Provenance::Constant, [](const Path&, Variations) { return 1.0; });
  return PathForm(spec->degree, Provenance::Iterated, [spec, t, q](const Path& p, Variations vs) {
    check_iterated_args(*spec, p, vs);
    return iterate(spec->compiled, spec->lower, q.m, p, vs).at(t);
  });
}

PathForm family_derivative(const FormFamily& f, double t, FdConfig fd) {
  check_time(t);
  fd.validate();
  return PathForm(f.degree(), Provenance::FdDerivative, [f, t, fd](const Path& p, Variations vs) {
    return fd_derivative([&](double u) { return f(u, p, vs); }, t, fd.h);
  });
}

PathForm pathform_d(const PathForm& a, FdConfig fd) {
  fd.validate();
  const int q = a.degree();
  return PathForm(q + 1, Provenance::FdDerivative, [a, q, fd](const Path& p, Variations vs) {
    double sum = 0.0;
    for (int i = 0; i <= q; ++i) {
      std::vector<Variation> rest;
      for (int j = 0; j <= q; ++j)
        if (j != i) rest.push_back(vs[j]);
      const double plus = a(translate(p, fd.h, vs[i]), rest);
      const double minus = a(translate(p, -fd.h, vs[i]), rest);
      sum += (i % 2 ? -1.0 : 1.0) * (plus - minus) / (2 * fd.h);
    }
    return sum;
  });
}

}  // namespace chen
