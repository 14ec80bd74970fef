#include "chen/paths.hpp"

#include "chen/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace chen {

// ---------------------------------------------------------------------------
// Analytic functions

double AnalyticFunction::value(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    switch (term.kind) {
      case AnalyticTerm::Kind::Power:
        sum += term.coef * (term.param == 0 ? 1.0 : std::pow(t, term.param));
        break;
      case AnalyticTerm::Kind::Sin:
        sum += term.coef * std::sin(term.param * t);
        break;
      case AnalyticTerm::Kind::Cos:
        sum += term.coef * std::cos(term.param * t);
        break;
    }
  }
  return sum;
}

double AnalyticFunction::derivative(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    switch (term.kind) {
      case AnalyticTerm::Kind::Power:
        if (term.param == 1)
          sum += term.coef;
        else if (term.param != 0)
          sum += term.coef * term.param * std::pow(t, term.param - 1);
        break;
      case AnalyticTerm::Kind::Sin:
        sum += term.coef * term.param * std::cos(term.param * t);
        break;
      case AnalyticTerm::Kind::Cos:
        sum -= term.coef * term.param * std::sin(term.param * t);
        break;
    }
  }
  return sum;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  AnalyticFunction parse() {
    std::vector<AnalyticTerm> terms;
    skip();
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    } else if (peek('+')) {
      ++pos_;
    }
    for (;;) {
      AnalyticTerm t = term();
      if (negate) t.coef = -t.coef;
      terms.push_back(t);
      skip();
      if (pos_ >= s_.size()) break;
      if (peek('+'))
        negate = false;
      else if (peek('-'))
        negate = true;
      else
        throw ParseError("expected '+' or '-'", pos_);
      ++pos_;
    }
    return AnalyticFunction(std::move(terms));
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool keyword(std::string_view k) {
    skip();
    if (s_.substr(pos_, k.size()) != k) return false;
    pos_ += k.size();
    return true;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool at_number() {
    skip();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-');
  }

  double rational() {
    skip();
    const std::size_t start = pos_;
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    auto digits = [&] {
      skip();
      const std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (b == pos_) throw ParseError("expected number", b);
      return std::string(s_.substr(b, pos_ - b));
    };
    std::string text = digits();
    if (peek('/')) {
      ++pos_;
      std::string den = digits();
      if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", start);
      text += "/" + den;
    }
    mpq_class q(text, 10);
    q.canonicalize();
    return neg ? -q.get_d() : q.get_d();
  }

  // atom := 't' ('^' UINT)? | ('sin'|'cos') '(' (RATIONAL '*')? 't' ')'
  AnalyticTerm atom(double coef) {
    skip();
    if (keyword("sin")) return trig(coef, AnalyticTerm::Kind::Sin);
    if (keyword("cos")) return trig(coef, AnalyticTerm::Kind::Cos);
    if (keyword("t")) {
      double k = 1;
      if (peek('^')) {
        ++pos_;
        skip();
        const std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_ || pos_ - b > 3) throw ParseError("expected small exponent", b);
        k = std::stod(std::string(s_.substr(b, pos_ - b)));
      }
      return {AnalyticTerm::Kind::Power, coef, k};
    }
    throw ParseError("expected 't', 'sin' or 'cos'", pos_);
  }

  AnalyticTerm trig(double coef, AnalyticTerm::Kind kind) {
    expect('(');
    double freq = 1.0;
    if (at_number()) {
      freq = rational();
      expect('*');
    }
    if (!keyword("t")) throw ParseError("expected 't'", pos_);
    expect(')');
    return {kind, coef, freq};
  }

  AnalyticTerm term() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const double c = rational();
      if (!peek('*')) return {AnalyticTerm::Kind::Power, c, 0};
      ++pos_;
      return atom(c);
    }
    return atom(1.0);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Natural cubic spline second derivatives on a uniform grid with spacing h.
std::vector<double> spline_moments(const std::vector<double>& y, double h) {
  const size_t m = y.size() - 1;
  std::vector<double> M(m + 1, 0.0);
  if (m < 2) return M;
  const size_t k = m - 1;  // unknowns M_1..M_{m-1}
  std::vector<double> c(k), d(k);
  for (size_t i = 0; i < k; ++i) d[i] = 6.0 / (h * h) * (y[i + 2] - 2 * y[i + 1] + y[i]);
  // Thomas algorithm for tridiag(1, 4, 1).
  c[0] = 1.0 / 4.0;
  d[0] = d[0] / 4.0;
  for (size_t i = 1; i < k; ++i) {
    const double den = 4.0 - c[i - 1];
    c[i] = 1.0 / den;
    d[i] = (d[i] - d[i - 1]) / den;
  }
  M[k] = d[k - 1];
  for (size_t i = k - 1; i-- > 0;) M[i + 1] = d[i] - c[i] * M[i + 2];
  return M;
}

void check_domain(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("time outside the unit interval");
}

}  // namespace

AnalyticFunction AnalyticFunction::parse(std::string_view text) { return ExprParser(text).parse(); }

std::vector<AnalyticFunction> parse_coordinates(std::string_view text) {
  std::vector<AnalyticFunction> out;
  size_t start = 0;
  for (;;) {
    const size_t comma = text.find(',', start);
    const auto part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      out.push_back(AnalyticFunction::parse(part));
    } catch (const ParseError& e) {
      throw ParseError(std::string("coordinate ") + std::to_string(out.size() + 1) + ": " + e.what(),
                       start + e.offset());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curves

struct Curve::Impl {
  struct Analytic {
    std::vector<AnalyticFunction> coords;
  };
  struct Sampled {
    int m;
    std::vector<std::vector<double>> y;  // per coordinate, m+1 values
    std::vector<std::vector<double>> M;  // spline moments
  };
  int n;
  std::variant<Analytic, Sampled> rep;
};

Curve Curve::analytic(std::vector<AnalyticFunction> coords) {
  if (coords.empty()) throw std::invalid_argument("curve needs at least one coordinate");
  auto impl = std::make_shared<Impl>();
  impl->n = static_cast<int>(coords.size());
  impl->rep = Impl::Analytic{std::move(coords)};
  return Curve(std::move(impl));
}

Curve Curve::sampled(const std::vector<std::vector<double>>& points) {
  if (points.size() < 9) throw std::invalid_argument("sampled curve needs m >= 8");
  const int n = static_cast<int>(points.front().size());
  if (n < 1) throw std::invalid_argument("curve needs at least one coordinate");
  const int m = static_cast<int>(points.size()) - 1;
  Impl::Sampled s{m, std::vector<std::vector<double>>(n, std::vector<double>(m + 1)), {}};
  for (int i = 0; i <= m; ++i) {
    if (static_cast<int>(points[i].size()) != n) throw std::invalid_argument("ragged sample points");
    for (int c = 0; c < n; ++c) s.y[c][i] = points[i][c];
  }
  for (int c = 0; c < n; ++c) s.M.push_back(spline_moments(s.y[c], 1.0 / m));
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->rep = std::move(s);
  return Curve(std::move(impl));
}

int Curve::dim() const { return impl_->n; }
bool Curve::is_analytic() const { return std::holds_alternative<Impl::Analytic>(impl_->rep); }
int Curve::grid() const {
  if (auto* s = std::get_if<Impl::Sampled>(&impl_->rep)) return s->m;
  return 0;
}

const std::vector<AnalyticFunction>& Curve::coordinates() const {
  if (auto* a = std::get_if<Impl::Analytic>(&impl_->rep)) return a->coords;
  throw std::logic_error("sampled curve has no analytic coordinates");
}

namespace {

struct SplineLocation {
  int i;
  double A, B, h;
};

SplineLocation locate(int m, double t) {
  const double h = 1.0 / m;
  int i = static_cast<int>(t * m);
  if (i >= m) i = m - 1;
  const double B = (t - i * h) / h;
  return {i, 1.0 - B, B, h};
}

}  // namespace

void Curve::value(double t, std::span<double> out) const {
  check_domain(t);
  if (static_cast<int>(out.size()) != impl_->n) throw std::invalid_argument("output dimension mismatch");
  if (auto* a = std::get_if<Impl::Analytic>(&impl_->rep)) {
    for (int c = 0; c < impl_->n; ++c) out[c] = a->coords[c].value(t);
    return;
  }
  const auto& s = std::get<Impl::Sampled>(impl_->rep);
  const auto L = locate(s.m, t);
  for (int c = 0; c < impl_->n; ++c) {
    const auto& y = s.y[c];
    const auto& M = s.M[c];
    out[c] = L.A * y[L.i] + L.B * y[L.i + 1] +
             ((L.A * L.A * L.A - L.A) * M[L.i] + (L.B * L.B * L.B - L.B) * M[L.i + 1]) * L.h * L.h / 6.0;
  }
}

void Curve::derivative(double t, std::span<double> out) const {
  check_domain(t);
  if (static_cast<int>(out.size()) != impl_->n) throw std::invalid_argument("output dimension mismatch");
  if (auto* a = std::get_if<Impl::Analytic>(&impl_->rep)) {
    for (int c = 0; c < impl_->n; ++c) out[c] = a->coords[c].derivative(t);
    return;
  }
  const auto& s = std::get<Impl::Sampled>(impl_->rep);
  const auto L = locate(s.m, t);
  for (int c = 0; c < impl_->n; ++c) {
    const auto& y = s.y[c];
    const auto& M = s.M[c];
    out[c] = (y[L.i + 1] - y[L.i]) / L.h - (3 * L.A * L.A - 1) / 6.0 * L.h * M[L.i] +
             (3 * L.B * L.B - 1) / 6.0 * L.h * M[L.i + 1];
  }
}

std::vector<double> Curve::value(double t) const {
  std::vector<double> out(impl_->n);
  value(t, out);
  return out;
}

std::vector<double> Curve::derivative(double t) const {
  std::vector<double> out(impl_->n);
  derivative(t, out);
  return out;
}

Curve Curve::combine(double a, const Curve& other, double b) const {
  if (other.dim() != dim()) throw std::invalid_argument("curve dimension mismatch");
  if (is_analytic() && other.is_analytic()) {
    std::vector<AnalyticFunction> coords;
    for (int c = 0; c < dim(); ++c) {
      std::vector<AnalyticTerm> terms;
      for (auto t : coordinates()[c].terms()) {
        t.coef *= a;
        terms.push_back(t);
      }
      for (auto t : other.coordinates()[c].terms()) {
        t.coef *= b;
        terms.push_back(t);
      }
      coords.emplace_back(std::move(terms));
    }
    return analytic(std::move(coords));
  }
  const int m = std::max(grid(), other.grid());
  std::vector<std::vector<double>> pts(m + 1, std::vector<double>(dim()));
  std::vector<double> u(dim()), v(dim());
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    value(t, u);
    other.value(t, v);
    for (int c = 0; c < dim(); ++c) pts[i][c] = a * u[c] + b * v[c];
  }
  return sampled(pts);
}

Curve Curve::plus_affine(std::span<const double> at0, std::span<const double> at1) const {
  if (static_cast<int>(at0.size()) != dim() || static_cast<int>(at1.size()) != dim())
    throw std::invalid_argument("affine correction dimension mismatch");
  if (is_analytic()) {
    std::vector<AnalyticFunction> coords;
    for (int c = 0; c < dim(); ++c) {
      auto terms = coordinates()[c].terms();
      terms.push_back({AnalyticTerm::Kind::Power, at0[c], 0});
      terms.push_back({AnalyticTerm::Kind::Power, at1[c] - at0[c], 1});
      coords.emplace_back(std::move(terms));
    }
    return analytic(std::move(coords));
  }
  const auto& s = std::get<Impl::Sampled>(impl_->rep);
  std::vector<std::vector<double>> pts(s.m + 1, std::vector<double>(dim()));
  for (int i = 0; i <= s.m; ++i) {
    const double t = static_cast<double>(i) / s.m;
    for (int c = 0; c < dim(); ++c) pts[i][c] = s.y[c][i] + (1 - t) * at0[c] + t * at1[c];
  }
  return sampled(pts);
}

// ---------------------------------------------------------------------------
// Paths and variations

Path Path::constant(std::span<const double> point) {
  std::vector<AnalyticFunction> coords;
  for (double x : point) coords.push_back(AnalyticFunction::constant(x));
  return analytic(std::move(coords));
}

Path Path::line(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("endpoint dimension mismatch");
  std::vector<AnalyticFunction> coords;
  for (size_t c = 0; c < a.size(); ++c)
    coords.emplace_back(std::vector<AnalyticTerm>{{AnalyticTerm::Kind::Power, a[c], 0},
                                                  {AnalyticTerm::Kind::Power, b[c] - a[c], 1}});
  return analytic(std::move(coords));
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Variation::Variation(Curve c, bool vanishes_at_0, bool vanishes_at_1)
    : curve_(std::move(c)), at0_(vanishes_at_0), at1_(vanishes_at_1) {
  if (at0_ && max_abs(curve_.value(0.0)) > 1e-12) throw std::invalid_argument("variation does not vanish at 0");
  if (at1_ && max_abs(curve_.value(1.0)) > 1e-12) throw std::invalid_argument("variation does not vanish at 1");
}

Variation Variation::constant(std::span<const double> v) { return Variation(Path::constant(v).curve()); }

Variation Variation::pinned(const Curve& c, bool at_0, bool at_1) {
  std::vector<double> v0 = c.value(0.0), v1 = c.value(1.0);
  std::vector<double> a0(c.dim(), 0.0), a1(c.dim(), 0.0);
  for (int i = 0; i < c.dim(); ++i) {
    if (at_0 && at_1) {
      a0[i] = -v0[i];
      a1[i] = -v1[i];
    } else if (at_0) {
      a0[i] = a1[i] = -v0[i];
    } else if (at_1) {
      a0[i] = a1[i] = -v1[i];
    }
  }
  if (!at_0 && !at_1) return Variation(c);
  return Variation(c.plus_affine(a0, a1), at_0, at_1);
}

bool BasedConstraint::admits(const Path& p, double tol) const {
  auto close = [&](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
  };
  if (start && !close(p(0.0), *start)) return false;
  if (end && !close(p(1.0), *end)) return false;
  return true;
}

Path BasedConstraint::pin(const Path& p) const {
  const int n = p.dim();
  if ((start && static_cast<int>(start->size()) != n) || (end && static_cast<int>(end->size()) != n))
    throw std::invalid_argument("constraint dimension mismatch");
  if (!start && !end) return p;
  const auto p0 = p(0.0), p1 = p(1.0);
  std::vector<double> a0(n), a1(n);
  for (int i = 0; i < n; ++i) {
    const double d0 = start ? (*start)[i] - p0[i] : 0.0;
    const double d1 = end ? (*end)[i] - p1[i] : 0.0;
    a0[i] = start ? d0 : d1;
    a1[i] = end ? d1 : d0;
  }
  return Path(p.curve().plus_affine(a0, a1));
}

Variation BasedConstraint::pin(const Variation& v) const {
  return Variation::pinned(v.curve(), start.has_value() || v.vanishes_at_0(), end.has_value() || v.vanishes_at_1());
}

Path translate(const Path& p, double eps, const Variation& v) {
  if (p.dim() != v.dim()) throw std::invalid_argument("path and variation dimension mismatch");
  return Path(p.curve().combine(1.0, v.curve(), eps));
}

// ---------------------------------------------------------------------------
// CSV ingestion

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (;;) {
    const size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view s, size_t row) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw InputError("malformed number '" + std::string(s) + "' in row " + std::to_string(row));
  return v;
}

}  // namespace

Path load_path_csv(std::string_view bytes) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= bytes.size()) {
    const size_t nl = bytes.find('\n', start);
    auto line = trim(bytes.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) throw InputError("malformed header: empty input");

  const auto header = split(lines.front());
  if (header.size() < 2 || header[0] != "t") throw InputError("malformed header: expected t,x1,...,xn");
  for (size_t i = 1; i < header.size(); ++i)
    if (header[i] != "x" + std::to_string(i)) throw InputError("malformed header: expected column x" + std::to_string(i));
  const size_t n = header.size() - 1;

  std::vector<double> ts;
  std::vector<std::vector<double>> xs;
  for (size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r]);
    if (cells.size() != n + 1) throw InputError("row " + std::to_string(r) + " has the wrong number of columns");
    const double t = parse_double(cells[0], r);
    if (!ts.empty() && !(t > ts.back())) throw InputError("non-monotone t at row " + std::to_string(r));
    ts.push_back(t);
    std::vector<double> x(n);
    for (size_t c = 0; c < n; ++c) x[c] = parse_double(cells[c + 1], r);
    xs.push_back(std::move(x));
  }
  if (ts.size() < 9) throw InputError("too few rows: need at least 9");
  if (std::abs(ts.front()) > 1e-12 || std::abs(ts.back() - 1.0) > 1e-12) throw InputError("t range must be [0,1]");

  const int m = static_cast<int>(ts.size()) - 1;
  std::vector<std::vector<double>> grid(m + 1, std::vector<double>(n));
  size_t seg = 0;
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    while (seg + 2 < ts.size() && ts[seg + 1] < t) ++seg;
    const double w = std::clamp((t - ts[seg]) / (ts[seg + 1] - ts[seg]), 0.0, 1.0);
    for (size_t c = 0; c < n; ++c) grid[i][c] = (1 - w) * xs[seg][c] + w * xs[seg + 1][c];
  }
  return Path(Curve::sampled(grid));
}

}  // namespace chen
