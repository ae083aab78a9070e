#pragma once

#include "bbmb/fem1d.hpp"

namespace bbmb {

/// sqrt(w^T M w) with the exact mass matrix.
[[nodiscard]] double l2_norm(const NodalField& w);
/// ||w_x||, i.e. sqrt(w^T A w).
[[nodiscard]] double h1_seminorm(const NodalField& w);
/// sqrt(w(0)^2 + w(1)^2 + ||w_x||^2), equivalent to the H^1 norm on [0, 1].
[[nodiscard]] double tnorm(const NodalField& w);
/// Max of |nodal values|; exact for piecewise linears.
[[nodiscard]] double linf_norm(const NodalField& w);

}  // namespace bbmb
