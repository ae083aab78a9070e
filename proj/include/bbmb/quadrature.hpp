#pragma once

#include <cstddef>
#include <vector>

namespace bbmb {

/// Gauss-Legendre rule mapped to the reference interval [0, 1].
/// A rule with n points integrates polynomials of degree 2n-1 exactly.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

[[nodiscard]] QuadratureRule gauss_legendre(std::size_t n_points);

}  // namespace bbmb
