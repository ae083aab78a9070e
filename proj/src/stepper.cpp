#include "bbmb/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bbmb/norms.hpp"

namespace bbmb {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct BoundaryTerm {
  std::size_t node;
  double a;  // 1 + c_i + w_d
  double q;  // 2 / (9 c_i)
};

std::vector<BoundaryTerm> controlled_boundaries(const ModelParams& p, std::size_t n_nodes) {
  std::vector<BoundaryTerm> out;
  if (p.left_controlled()) out.push_back({0, 1.0 + p.c0 + p.w_d, 2.0 / (9.0 * p.c0)});
  if (p.right_controlled()) out.push_back({n_nodes - 1, 1.0 + p.c1 + p.w_d, 2.0 / (9.0 * p.c1)});
  return out;
}

EnergySample sample(double t, const NodalField& w, const NodalField* prev, double dt,
                    const ModelParams& p) {
  EnergySample s;
  s.t = t;
  s.e1 = energy_e1(w, p);
  s.e2 = energy_e2(w, p);
  if (prev != nullptr) {
    s.e3 = energy_e3({(w.left() - prev->left()) / dt, (w.right() - prev->right()) / dt},
                     {w.left(), w.right()}, p);
  }
  s.lyapunov = lyapunov_value(w, p);
  s.v0 = p.left_controlled() ? k0(w.left(), p) : 0.0;
  s.v1 = p.right_controlled() ? k1(w.right(), p) : 0.0;
  return s;
}

}  // namespace

void StepperConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("StepperConfig: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("StepperConfig: t_end must be positive");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("StepperConfig: newton_tol must be positive");
  if (newton_max_iters < 1) throw std::invalid_argument("StepperConfig: newton_max_iters must be >= 1");
  if (record_every < 1) throw std::invalid_argument("StepperConfig: record_every must be >= 1");
  if (t_end / dt > 1e12) throw std::invalid_argument("StepperConfig: too many steps");
}

std::size_t StepperConfig::num_steps() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

SchemeOperators SchemeOperators::assemble(std::shared_ptr<const Mesh> mesh) {
  SchemeOperators ops;
  ops.mass = assemble_mass(*mesh);
  ops.stiffness = assemble_stiffness(*mesh);
  ops.convection = assemble_convection(*mesh);
  ops.mesh = std::move(mesh);
  return ops;
}

NewtonDivergence::NewtonDivergence(double residual_norm, int iterations, std::optional<double> time)
    : std::runtime_error("Newton did not converge after " + std::to_string(iterations) +
                         " iterations (scaled residual " + std::to_string(residual_norm) + ")" +
                         (time ? " at t = " + std::to_string(*time) : std::string{})),
      residual_norm_(residual_norm),
      iterations_(iterations),
      time_(time) {}

std::vector<double> residual(const NodalField& w_new, const NodalField& w_old,
                             const ModelParams& p, const StepperConfig& cfg,
                             const SchemeOperators& ops) {
  const std::size_t n = w_new.size();
  if (w_old.size() != n || ops.mass.size() != n) {
    throw std::invalid_argument("residual: size mismatch");
  }
  const double k = cfg.dt;
  std::vector<double> dw(n);
  for (std::size_t j = 0; j < n; ++j) dw[j] = w_new[j] - w_old[j];

  const auto m_dw = ops.mass.apply(dw);
  const auto a_dw = ops.stiffness.apply(dw);
  const auto a_w = ops.stiffness.apply(w_new.values());
  const auto b_w = ops.convection.apply(w_new.values());
  const auto nl = nonlinear_convection(w_new);

  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = m_dw[j] / k + p.mu * a_dw[j] / k + p.nu * a_w[j] + (1.0 + p.w_d) * b_w[j] + nl[j];
  }
  const double ratio = p.mu / p.nu;
  for (const auto& b : controlled_boundaries(p, n)) {
    const double wn = w_new[b.node];
    const double wo = w_old[b.node];
    const double cube_diff = wn * wn * wn - wo * wo * wo;
    r[b.node] += b.a * wn + b.q * wn * wn * wn + ratio * (b.a * (wn - wo) + b.q * cube_diff) / k;
  }
  if (p.mode == BoundaryMode::dirichlet_left_control_right) r[0] = w_new[0];
  return r;
}

TriDiag jacobian(const NodalField& w_new, const ModelParams& p, const StepperConfig& cfg,
                 const SchemeOperators& ops) {
  const double k = cfg.dt;
  TriDiag j = (1.0 / k) * ops.mass;
  j += (p.mu / k + p.nu) * ops.stiffness;
  j += (1.0 + p.w_d) * ops.convection;
  j += nonlinear_convection_jacobian(w_new);
  const double factor = 1.0 + p.mu / (p.nu * k);
  for (const auto& b : controlled_boundaries(p, w_new.size())) {
    const double wn = w_new[b.node];
    j.diag[b.node] += (b.a + 3.0 * b.q * wn * wn) * factor;
  }
  if (p.mode == BoundaryMode::dirichlet_left_control_right) {
    j.diag[0] = 1.0;
    if (j.size() > 1) j.upper[0] = 0.0;
  }
  return j;
}

StepReport advance_step(const NodalField& w_old, const ModelParams& p, const StepperConfig& cfg,
                        const SchemeOperators& ops) {
  StepReport report{w_old, 0, {}};
  NodalField& w = report.state;
  for (int it = 1; it <= cfg.newton_max_iters; ++it) {
    auto r = residual(w, w_old, p, cfg, ops);
    const double norm = cfg.dt * max_abs(r);
    report.residual_history.push_back(norm);
    report.iterations = it;
    if (!std::isfinite(norm)) break;
    if (norm <= cfg.newton_tol) return report;
    const TriDiag jac = jacobian(w, p, cfg, ops);
    // Residual change caused by perturbing W by a few ulps; below this the
    // residual is rounding noise and Newton cannot improve it.
    report.rounding_floor = kRoundingFloorFactor * std::numeric_limits<double>::epsilon() *
                            cfg.dt * jac.norm_inf() * std::max(1.0, linf_norm(w));
    if (norm <= report.rounding_floor) {
      report.floor_limited = true;
      return report;
    }
    const auto delta = thomas_solve(jac, r);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= delta[j];
  }
  throw NewtonDivergence(report.residual_history.back(), report.iterations);
}

double lyapunov_value(const NodalField& w, const ModelParams& p) {
  const double l2 = l2_norm(w);
  const double dx = h1_seminorm(w);
  return l2 * l2 + p.mu * dx * dx + p.mu / p.nu * energy_e1(w, p);
}

SimulationResult run_simulation(const NodalField& w0h, const ModelParams& p,
                                const StepperConfig& cfg) {
  p.validate();
  cfg.validate();
  const auto ops = SchemeOperators::assemble(w0h.mesh_ptr());
  const std::size_t steps = cfg.num_steps();

  SimulationResult out;
  auto record = [&](double t, const NodalField& w, const NodalField* prev, int iters) {
    out.times.push_back(t);
    out.energy.push_back(sample(t, w, prev, cfg.dt, p));
    out.l2.push_back(l2_norm(w));
    out.linf.push_back(linf_norm(w));
    out.tnorm.push_back(tnorm(w));
    out.newton_iters.push_back(iters);
    if (cfg.store_fields) out.fields.push_back(w);
  };

  NodalField w = w0h;
  record(0.0, w, nullptr, 0);
  double lyap_prev = lyapunov_value(w, p);
  long long iter_total = 0;

  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = static_cast<double>(n) * cfg.dt;
    StepReport step = [&] {
      try {
        return advance_step(w, p, cfg, ops);
      } catch (const NewtonDivergence& e) {
        throw NewtonDivergence(e.residual_norm(), e.iterations(), t);
      }
    }();

    auto& stats = out.newton;
    stats.steps = n;
    stats.max_iterations = std::max(stats.max_iterations, step.iterations);
    iter_total += step.iterations;
    if (step.floor_limited) {
      ++stats.floor_limited_steps;
    } else {
      stats.max_final_residual = std::max(stats.max_final_residual, step.residual_history.back());
    }
    const auto& hist = step.residual_history;
    for (std::size_t m = 0; m + 1 < hist.size(); ++m) {
      if (hist[m] <= kQuadraticRegime && hist[m + 1] > kQuadraticNoiseFactor * step.rounding_floor) {
        stats.max_quadratic_ratio =
            std::max(stats.max_quadratic_ratio, hist[m + 1] / (hist[m] * hist[m]));
        ++stats.quadratic_samples;
      }
    }

    const double lyap = lyapunov_value(step.state, p);
    if (lyap_prev > 0.0) {
      out.max_lyapunov_increase = std::max(out.max_lyapunov_increase, (lyap - lyap_prev) / lyap_prev);
    } else if (lyap > 0.0) {
      out.max_lyapunov_increase = std::max(out.max_lyapunov_increase, 1.0);
    }
    lyap_prev = lyap;

    if (n % cfg.record_every == 0 || n == steps) {
      record(t, step.state, &w, step.iterations);
    }
    w = std::move(step.state);
  }
  if (steps > 0) {
    out.newton.mean_iterations = static_cast<double>(iter_total) / static_cast<double>(steps);
  }
  out.final_state = std::move(w);
  return out;
}

}  // namespace bbmb
