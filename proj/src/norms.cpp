#include "bbmb/norms.hpp"

#include <algorithm>
#include <cmath>

namespace bbmb {

// Cellwise sums avoid assembling the global matrices for every sample.

double l2_norm(const NodalField& w) {
  const Mesh& m = w.mesh();
  double s = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const double a = w[c];
    const double b = w[c + 1];
    s += m.width(c) * (a * a + a * b + b * b) / 3.0;
  }
  return std::sqrt(s);
}

double h1_seminorm(const NodalField& w) {
  const Mesh& m = w.mesh();
  double s = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const double d = w[c + 1] - w[c];
    s += d * d / m.width(c);
  }
  return std::sqrt(s);
}

double tnorm(const NodalField& w) {
  const double dx = h1_seminorm(w);
  return std::sqrt(w.left() * w.left() + w.right() * w.right() + dx * dx);
}

double linf_norm(const NodalField& w) {
  double m = 0.0;
  for (double v : w.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace bbmb
