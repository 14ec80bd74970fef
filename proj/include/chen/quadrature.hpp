#pragma once

#include <vector>

namespace chen {

/// Prefix integrals C(x) = int_0^x f of a function sampled on the uniform
/// grid u_i = i/m of I (m even).
///
/// Each Simpson pair [u_2k, u_2k+2] carries the quadratic interpolant of its
/// three samples; C is the running integral of that piecewise quadratic, so
/// C(u_2k) is the composite Simpson sum and C is continuous everywhere.
class CumulativeSimpson {
 public:
  explicit CumulativeSimpson(std::vector<double> samples);

  int subdivisions() const { return m_; }
  double node(int i) const { return c_[i]; }
  const std::vector<double>& nodes() const { return c_; }
  double at(double x) const;
  /// Oriented integral from s to t.
  double integral(double s, double t) const { return at(t) - at(s); }

 private:
  int m_;
  std::vector<double> f_;
  std::vector<double> c_;
};

}  // namespace chen
