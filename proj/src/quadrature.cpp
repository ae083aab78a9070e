#include "bbmb/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bbmb {

QuadratureRule gauss_legendre(std::size_t n_points) {
  if (n_points == 0) throw std::invalid_argument("gauss_legendre: need at least one point");
  const std::size_t n = n_points;
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // x_i decreases with i, so 1 - x_i gives ascending points on [0, 1].
    rule.points[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace bbmb
