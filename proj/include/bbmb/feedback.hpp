#pragma once

#include <string_view>
#include <utility>

#include "bbmb/fem1d.hpp"

namespace bbmb {

/// Boundary configuration of the shifted problem.
enum class BoundaryMode {
  /// Nonlinear Neumann feedback at both ends.
  both_neumann_control,
  /// Homogeneous Neumann data at both ends.
  uncontrolled_zero_neumann,
  /// w(0, t) = 0, feedback Neumann law at x = 1.
  dirichlet_left_control_right,
};

[[nodiscard]] std::string_view to_string(BoundaryMode mode) noexcept;
/// Throws std::invalid_argument on an unknown name.
[[nodiscard]] BoundaryMode parse_boundary_mode(std::string_view name);

/// Physical and control parameters for w_t - mu w_xxt - nu w_xx + (1 + w_d) w_x + w w_x = 0.
struct ModelParams {
  double mu{0.5};
  double nu{0.5};
  double w_d{3.0};
  double c0{1.0};
  double c1{1.0};
  BoundaryMode mode{BoundaryMode::both_neumann_control};

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  [[nodiscard]] bool left_controlled() const noexcept {
    return mode == BoundaryMode::both_neumann_control;
  }
  [[nodiscard]] bool right_controlled() const noexcept {
    return mode != BoundaryMode::uncontrolled_zero_neumann;
  }
  [[nodiscard]] double gain(int side) const noexcept { return side == 0 ? c0 : c1; }
};

/// Monitors recorded along a trajectory.
struct EnergySample {
  double t{0.0};
  double e1{0.0};
  double e2{0.0};
  double e3{0.0};
  /// ||w||^2 + mu ||w_x||^2 + (mu/nu) E1(w).
  double lyapunov{0.0};
  double v0{0.0};
  double v1{0.0};
};

/// Neumann feedback at x = 0: (1/nu) [(c0 + 1 + w_d) w + 2/(9 c0) w^3].
[[nodiscard]] double k0(double w0_val, const ModelParams& p) noexcept;
/// Neumann feedback at x = 1: -(1/nu) [(c1 + 1 + w_d) w + 2/(9 c1) w^3].
[[nodiscard]] double k1(double w1_val, const ModelParams& p) noexcept;

/// Largest admissible exponential decay rate for the given parameters.
[[nodiscard]] double alpha_bound(const ModelParams& p);
/// Dissipation margin for a rate alpha in [0, alpha_bound(p)]. Throws
/// std::invalid_argument outside that range.
[[nodiscard]] double beta_constant(const ModelParams& p, double alpha);

/// sum_i [(c_i + 1 + w_d) + w(i)^2 / (3 c_i)] w(i)^2
[[nodiscard]] double energy_e1(const NodalField& w, const ModelParams& p);
/// As energy_e1 with quartic weight 1/(9 c_i).
[[nodiscard]] double energy_e2(const NodalField& w, const ModelParams& p);
/// sum_i [(1 + c_i + w_d) + 2 w(i)^2 / (3 c_i)] w_t(i)^2
[[nodiscard]] double energy_e3(std::pair<double, double> w_t_boundary,
                               std::pair<double, double> w_boundary, const ModelParams& p);
/// (mu/nu) sum_i [(1 + c_i + w_d) + w1(i)^2 / (3 c_i)] z(i)^2
[[nodiscard]] double energy_e4(const NodalField& z, const NodalField& w1, const ModelParams& p);

}  // namespace bbmb
