#include "chen/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace chen {

CumulativeSimpson::CumulativeSimpson(std::vector<double> samples)
    : m_(static_cast<int>(samples.size()) - 1), f_(std::move(samples)) {
  if (m_ < 2 || m_ % 2 != 0) throw std::invalid_argument("cumulative Simpson needs an even number of panels");
  const double h = 1.0 / m_;
  c_.assign(m_ + 1, 0.0);
  for (int k = 0; 2 * k < m_; ++k) {
    const double f0 = f_[2 * k], f1 = f_[2 * k + 1], f2 = f_[2 * k + 2];
    c_[2 * k + 1] = c_[2 * k] + h / 12.0 * (5 * f0 + 8 * f1 - f2);
    c_[2 * k + 2] = c_[2 * k] + h / 3.0 * (f0 + 4 * f1 + f2);
  }
}

double CumulativeSimpson::at(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::out_of_range("integration limit outside the unit interval");
  const double scaled = x * m_;
  const double nearest = std::round(scaled);
  if (scaled == nearest) return c_[static_cast<int>(nearest)];
  int k = static_cast<int>(scaled / 2);
  if (2 * k >= m_) k = m_ / 2 - 1;
  const double h = 1.0 / m_;
  const double xi = scaled - 2 * k;
  const double xi2 = xi * xi, xi3 = xi2 * xi;
  const double w0 = xi3 / 6 - 0.75 * xi2 + xi;
  const double w1 = xi2 - xi3 / 3;
  const double w2 = xi3 / 6 - 0.25 * xi2;
  return c_[2 * k] + h * (w0 * f_[2 * k] + w1 * f_[2 * k + 1] + w2 * f_[2 * k + 2]);
}

}  // namespace chen
