#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chen {

struct AnalyticTerm {
  enum class Kind { Power, Sin, Cos };
  Kind kind;
  double coef;
  /// Exponent k for Power, frequency a for Sin/Cos.
  double param;
};

/// Finite sum of c*t^k, c*sin(a*t) and c*cos(a*t).
class AnalyticFunction {
 public:
  AnalyticFunction() = default;
  explicit AnalyticFunction(std::vector<AnalyticTerm> terms) : terms_(std::move(terms)) {}

  /// Parses e.g. "1/2*t^2 - 3*sin(2*t) + 1" (rational coefficients and frequencies).
  static AnalyticFunction parse(std::string_view text);
  static AnalyticFunction constant(double c) { return AnalyticFunction({{AnalyticTerm::Kind::Power, c, 0}}); }

  double value(double t) const;
  double derivative(double t) const;
  const std::vector<AnalyticTerm>& terms() const { return terms_; }

 private:
  std::vector<AnalyticTerm> terms_;
};

/// A curve I -> R^n, either analytic or a natural cubic spline through
/// samples on the uniform grid t_i = i/m. Cheap to copy; immutable.
class Curve {
 public:
  static Curve analytic(std::vector<AnalyticFunction> coords);
  /// points[i] is the value at t = i/m, m = points.size() - 1 >= 8.
  static Curve sampled(const std::vector<std::vector<double>>& points);

  int dim() const;
  bool is_analytic() const;
  /// Sample count m for sampled curves, 0 for analytic ones.
  int grid() const;

  void value(double t, std::span<double> out) const;
  void derivative(double t, std::span<double> out) const;
  std::vector<double> value(double t) const;
  std::vector<double> derivative(double t) const;

  /// a*this + b*other; stays analytic when both are, else resampled on the finer grid.
  Curve combine(double a, const Curve& other, double b) const;
  /// this + (1-t)*at0 + t*at1.
  Curve plus_affine(std::span<const double> at0, std::span<const double> at1) const;

  const std::vector<AnalyticFunction>& coordinates() const;

  struct Impl;

 private:
  explicit Curve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// A point of the path space: a curve defined on I = [0, 1].
class Path {
 public:
  explicit Path(Curve c) : curve_(std::move(c)) {}
  static Path analytic(std::vector<AnalyticFunction> coords) { return Path(Curve::analytic(std::move(coords))); }
  static Path constant(std::span<const double> point);
  /// Straight line from a to b.
  static Path line(std::span<const double> a, std::span<const double> b);

  int dim() const { return curve_.dim(); }
  const Curve& curve() const { return curve_; }

  std::vector<double> operator()(double t) const { return curve_.value(t); }
  std::vector<double> velocity(double t) const { return curve_.derivative(t); }

 private:
  Curve curve_;
};

/// A tangent vector to the path space: a displacement field along I.
class Variation {
 public:
  /// Throws if a requested vanishing flag does not hold to within 1e-12.
  explicit Variation(Curve c, bool vanishes_at_0 = false, bool vanishes_at_1 = false);
  static Variation constant(std::span<const double> v);

  /// Subtracts the endpoint values so the result vanishes where requested.
  static Variation pinned(const Curve& c, bool at_0, bool at_1);

  int dim() const { return curve_.dim(); }
  const Curve& curve() const { return curve_; }
  bool vanishes_at_0() const { return at0_; }
  bool vanishes_at_1() const { return at1_; }

  std::vector<double> operator()(double t) const { return curve_.value(t); }

 private:
  Curve curve_;
  bool at0_;
  bool at1_;
};

/// Endpoint conditions cutting out P_{x1}M, P^{x2}M or P_{x1}^{x2}M.
struct BasedConstraint {
  std::optional<std::vector<double>> start;
  std::optional<std::vector<double>> end;

  bool admits(const Path& p, double tol = 1e-12) const;
  /// Adds the smallest affine correction making p satisfy the constraint.
  Path pin(const Path& p) const;
  /// Makes v vanish at every constrained endpoint.
  Variation pin(const Variation& v) const;
};

/// Pointwise p(t) + eps * v(t).
Path translate(const Path& p, double eps, const Variation& v);

/// Parses CSV text with header "t,x1,...,xn" into a sampled path.
Path load_path_csv(std::string_view bytes);

/// Comma-separated per-coordinate expressions, e.g. "t, t^2 + sin(2*t)".
std::vector<AnalyticFunction> parse_coordinates(std::string_view text);

}  // namespace chen
