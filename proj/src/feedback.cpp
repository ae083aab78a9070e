#include "bbmb/feedback.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bbmb {

namespace {

// Boundary quantities of the form sum_i [(1 + c_i + w_d) + q / c_i * s_i^2] r_i^2.
double boundary_quadratic(std::pair<double, double> r, std::pair<double, double> s, double q,
                          const ModelParams& p) {
  const std::array<double, 2> rr{r.first, r.second};
  const std::array<double, 2> ss{s.first, s.second};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double c = p.gain(i);
    sum += ((1.0 + c + p.w_d) + q / c * ss[i] * ss[i]) * rr[i] * rr[i];
  }
  return sum;
}

}  // namespace

std::string_view to_string(BoundaryMode mode) noexcept {
  switch (mode) {
    case BoundaryMode::both_neumann_control:
      return "both_neumann_control";
    case BoundaryMode::uncontrolled_zero_neumann:
      return "uncontrolled_zero_neumann";
    case BoundaryMode::dirichlet_left_control_right:
      return "dirichlet_left_control_right";
  }
  return "unknown";
}

BoundaryMode parse_boundary_mode(std::string_view name) {
  for (auto m : {BoundaryMode::both_neumann_control, BoundaryMode::uncontrolled_zero_neumann,
                 BoundaryMode::dirichlet_left_control_right}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown boundary mode '" + std::string(name) + "'");
}

void ModelParams::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("ModelParams: nu must be positive");
  if (!(mu >= 0.0)) throw std::invalid_argument("ModelParams: mu must be nonnegative");
  if (!(w_d >= 0.0)) throw std::invalid_argument("ModelParams: w_d must be nonnegative");
  if (!(c0 > 0.0) || !(c1 > 0.0)) {
    throw std::invalid_argument("ModelParams: control gains must be positive");
  }
}

double k0(double w0_val, const ModelParams& p) noexcept {
  return ((p.c0 + 1.0 + p.w_d) * w0_val + 2.0 / (9.0 * p.c0) * w0_val * w0_val * w0_val) / p.nu;
}

double k1(double w1_val, const ModelParams& p) noexcept {
  return -((p.c1 + 1.0 + p.w_d) * w1_val + 2.0 / (9.0 * p.c1) * w1_val * w1_val * w1_val) / p.nu;
}

double alpha_bound(const ModelParams& p) {
  p.validate();
  if (p.mode == BoundaryMode::uncontrolled_zero_neumann) {
    throw std::invalid_argument("alpha_bound: no feedback control in uncontrolled mode");
  }
  double m = std::min(p.nu / (p.mu + 1.0), p.nu / (2.0 * p.mu + p.nu));
  for (int i = 0; i < 2; ++i) {
    const double a = 1.0 + p.gain(i) + p.w_d;
    m = std::min(m, p.nu * a / (p.nu + a * p.mu));
  }
  return 0.5 * m;
}

double beta_constant(const ModelParams& p, double alpha) {
  const double bound = alpha_bound(p);
  if (alpha < 0.0 || alpha > bound) {
    throw std::invalid_argument("beta_constant: alpha outside [0, alpha_bound]");
  }
  const double ratio = p.mu / p.nu;
  double b = std::min(2.0 * (p.nu - alpha * (p.mu + 1.0)), 1.0 - 2.0 * alpha * ratio);
  for (int i = 0; i < 2; ++i) {
    const double a = 1.0 + p.gain(i) + p.w_d;
    b = std::min(b, a - 2.0 * alpha * (a * ratio + 1.0));
  }
  return b;
}

double energy_e1(const NodalField& w, const ModelParams& p) {
  const std::pair<double, double> b{w.left(), w.right()};
  return boundary_quadratic(b, b, 1.0 / 3.0, p);
}

double energy_e2(const NodalField& w, const ModelParams& p) {
  const std::pair<double, double> b{w.left(), w.right()};
  return boundary_quadratic(b, b, 1.0 / 9.0, p);
}

double energy_e3(std::pair<double, double> w_t_boundary, std::pair<double, double> w_boundary,
                 const ModelParams& p) {
  return boundary_quadratic(w_t_boundary, w_boundary, 2.0 / 3.0, p);
}

double energy_e4(const NodalField& z, const NodalField& w1, const ModelParams& p) {
  if (!z.same_mesh(w1)) throw std::invalid_argument("energy_e4: mesh mismatch");
  return p.mu / p.nu *
         boundary_quadratic({z.left(), z.right()}, {w1.left(), w1.right()}, 1.0 / 3.0, p);
}

}  // namespace bbmb
