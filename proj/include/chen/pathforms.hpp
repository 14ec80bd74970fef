#pragma once

#include "chen/forms.hpp"
#include "chen/paths.hpp"

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace chen {

struct QuadratureConfig {
  /// Subdivisions of the uniform grid on I; even and >= 64.
  int m = 1024;
  void validate() const;
};

struct FdConfig {
  /// Central-difference step, 0 < h < 0.1.
  double h = 1e-3;
  void validate() const;
};

enum class Provenance { Pullback, Slice, Wedge, Integral, Iterated, FdDerivative, Constant, Sum, Scaled };
std::string_view to_string(Provenance p);

using Variations = std::span<const Variation>;

/// A degree-q differential form on the path space, given by its values on a
/// path and q variations. Values are multilinear and alternating in the
/// variations.
class PathForm {
 public:
  using Evaluator = std::function<double(const Path&, Variations)>;

  PathForm(int degree, Provenance tag, Evaluator f);
  static PathForm constant(double c);

  int degree() const { return degree_; }
  Provenance provenance() const { return tag_; }

  /// Throws when the variation count differs from degree() or dimensions disagree.
  double operator()(const Path& p, Variations vs) const;

  friend PathForm operator+(const PathForm& a, const PathForm& b);
  friend PathForm operator-(const PathForm& a, const PathForm& b);
  friend PathForm operator*(double c, const PathForm& a);

 private:
  int degree_;
  Provenance tag_;
  std::shared_ptr<const Evaluator> f_;
};

/// Shuffle product: sum over (qa, qb)-shuffles with sign.
PathForm wedge(const PathForm& a, const PathForm& b);

/// A map u in I -> PathForm of fixed degree, with an optional fast sampler
/// producing the values at every node u_i = i/m for one (path, variations).
class FormFamily {
 public:
  using Pointwise = std::function<double(double u, const Path&, Variations)>;
  using Sampler = std::function<std::vector<double>(int m, const Path&, Variations)>;

  FormFamily(int degree, Pointwise f, Sampler s = nullptr);
  static FormFamily from_map(int degree, std::function<PathForm(double)> map);

  int degree() const { return degree_; }
  double operator()(double u, const Path& p, Variations vs) const;
  std::vector<double> sample(int m, const Path& p, Variations vs) const;
  PathForm at(double u) const;

 private:
  int degree_;
  std::shared_ptr<const Pointwise> f_;
  std::shared_ptr<const Sampler> s_;
};

FormFamily wedge(const FormFamily& a, const FormFamily& b);
FormFamily operator+(const FormFamily& a, const FormFamily& b);
FormFamily operator*(double c, const FormFamily& a);

/// u -> phi_u^* w.
FormFamily pullback_family(const Form& w);
/// u -> (w)_u^*.
FormFamily slice_family(const Form& w);
/// u -> D_u(phi_u^* w), i.e. the time-derivative pullback at u.
FormFamily time_derivative_family(const Form& w, FdConfig fd = {});
/// u -> int_s^u f(v) dv.
FormFamily integral_family(const FormFamily& f, double s, QuadratureConfig q = {});
/// u -> int_{s_1..s_k}^u w_1 ... w_k.
FormFamily iterated_family(std::vector<Form> forms, std::vector<double> lower, QuadratureConfig q = {});
/// u -> D_u f by finite differences in u.
FormFamily derivative_family(const FormFamily& f, FdConfig fd = {});

/// phi_t^* w: value w(gamma(t))(V_1(t), ..., V_p(t)).
PathForm pullback_at(const Form& w, double t);
/// (w)_t^*: value w(gamma(t))(gamma'(t), V_1(t), ..., V_{p-1}(t)); needs p >= 1.
PathForm slice(const Form& w, double t);
/// d/du of pullback_at(w, u) at u = t for fixed path and variations. Uses the
/// chain rule when every curve is analytic, a central difference otherwise.
PathForm time_derivative_pullback(const Form& w, double t, FdConfig fd = {});
/// int_s^t f(u) du by cumulative Simpson on the grid of q (oriented).
PathForm integrate_family(const FormFamily& f, double s, double t, QuadratureConfig q = {});
/// int_s^t w = int_s^t (w)_u^* du.
PathForm simple_integral(const Form& w, double s, double t, QuadratureConfig q = {});
/// int_{s_1..s_k}^t w_1 ... w_k of degree p_1 + ... + p_k - k; the empty word is 1.
PathForm iterated_integral(std::vector<Form> forms, std::vector<double> lower, double t, QuadratureConfig q = {});
/// D_t f: central difference in the family parameter (one-sided near the ends of I).
PathForm family_derivative(const FormFamily& f, double t, FdConfig fd = {});
/// Exterior derivative on the path space by central differences along
/// translations: sum_i (-1)^i D_{V_i} a(V_0..^V_i..V_q).
PathForm pathform_d(const PathForm& a, FdConfig fd = {});

/// Order-preserving splits of {0..p+q-1} into blocks of size p and q, with sign.
struct Shuffle {
  std::vector<int> first;
  std::vector<int> second;
  int sign;
};
const std::vector<Shuffle>& shuffles(int p, int q);

}  // namespace chen
