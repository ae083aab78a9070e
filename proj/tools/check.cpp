#include "check.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "bbmb/quadrature.hpp"

namespace bbmb::tools {

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::shared_ptr<const Mesh> jittered_mesh(std::size_t n_cells, std::mt19937& rng) {
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::vector<double> nodes(n_cells + 1);
  for (std::size_t j = 0; j <= n_cells; ++j) {
    nodes[j] = static_cast<double>(j) / static_cast<double>(n_cells);
    if (j > 0 && j < n_cells) nodes[j] += jitter(rng) / static_cast<double>(n_cells);
  }
  return std::make_shared<const Mesh>(std::move(nodes));
}

NodalField random_field(std::shared_ptr<const Mesh> mesh, std::mt19937& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> v(mesh->num_nodes());
  for (double& x : v) x = d(rng);
  return NodalField(std::move(mesh), std::move(v));
}

Outcome check_operator_structure() {
  std::mt19937 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto mesh = jittered_mesh(1 + trial % 6, rng);
    const auto m = assemble_mass(*mesh);
    const auto a = assemble_stiffness(*mesh);
    const auto b = assemble_convection(*mesh);
    const std::vector<double> ones(mesh->num_nodes(), 1.0);
    for (double v : a.apply(ones)) worst = std::max(worst, std::abs(v));
    for (double v : b.apply(ones)) worst = std::max(worst, std::abs(v));
    double total = 0.0;
    for (double v : m.apply(ones)) total += v;
    worst = std::max(worst, std::abs(total - 1.0));
    if (m.lower != m.upper || a.lower != a.upper) return {false, "mass/stiffness not symmetric"};
  }
  return {worst <= 1e-12, fmt::format("max defect {:.3e}", worst)};
}

Outcome check_discrete_laplacian() {
  std::mt19937 rng(11);
  const auto mesh = jittered_mesh(4, rng);
  const auto m = assemble_mass(*mesh);
  const auto a = assemble_stiffness(*mesh);
  const auto rule = gauss_legendre(3);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = random_field(mesh, rng);
    const auto lap = discrete_laplacian_apply(v, m, a);
    for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
      std::vector<double> e(mesh->num_nodes(), 0.0);
      e[i] = 1.0;
      const NodalField chi(mesh, e);
      double lhs = 0.0;
      double grad = 0.0;
      for (std::size_t c = 0; c < mesh->num_cells(); ++c) {
        const double h = mesh->width(c);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
          const double x = mesh->nodes()[c] + rule.points[q] * h;
          lhs += -rule.weights[q] * h * lap.evaluate(x) * chi.evaluate(x);
        }
        grad += (v[c + 1] - v[c]) * (chi[c + 1] - chi[c]) / h;
      }
      const double rhs = grad + v.left_slope() * chi.left() - v.right_slope() * chi.right();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {worst <= 1e-12, fmt::format("max identity defect {:.3e}", worst)};
}

Outcome check_scheme_jacobian(const ModelParams& p) {
  std::mt19937 rng(13);
  const auto mesh = std::make_shared<const Mesh>(uniform_mesh(4));
  const auto ops = SchemeOperators::assemble(mesh);
  StepperConfig cfg;
  cfg.dt = 1e-2;
  constexpr double eps = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto w_old = random_field(mesh, rng);
    const auto w = random_field(mesh, rng);
    const auto jac = jacobian(w, p, cfg, ops);
    for (std::size_t j = 0; j < w.size(); ++j) {
      NodalField plus = w;
      NodalField minus = w;
      plus[j] += eps;
      minus[j] -= eps;
      const auto rp = residual(plus, w_old, p, cfg, ops);
      const auto rm = residual(minus, w_old, p, cfg, ops);
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double fd = (rp[i] - rm[i]) / (2.0 * eps);
        worst = std::max(worst, std::abs(jac.at(i, j) - fd) / std::max(1.0, std::abs(fd)));
      }
    }
  }
  return {worst <= 1e-6, fmt::format("max relative FD mismatch {:.3e}", worst)};
}

Outcome check_projection_identity() {
  std::mt19937 rng(17);
  const auto mesh = jittered_mesh(8, rng);
  const auto target = random_field(mesh, rng);
  const auto proj = auxiliary_projection([&](double x) { return target.evaluate(x); },
                                         [&](double x) { return target.derivative(x); }, mesh);
  double worst = 0.0;
  for (std::size_t j = 0; j < target.size(); ++j) worst = std::max(worst, std::abs(proj[j] - target[j]));
  return {worst <= 1e-12, fmt::format("max nodal deviation {:.3e}", worst)};
}

Outcome check_norm_inequalities() {
  std::mt19937 rng(19);
  double worst = -1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto mesh = jittered_mesh(1 + trial % 12, rng);
    const auto w = random_field(mesh, rng, 5.0);
    const double l2 = l2_norm(w);
    const double dx = h1_seminorm(w);
    worst = std::max(worst, linf_norm(w) - std::sqrt(2.0) * tnorm(w));
    for (double b : {w.left(), w.right()}) worst = std::max(worst, l2 * l2 - (2.0 * b * b + dx * dx));
  }
  return {worst <= 1e-12, fmt::format("largest violation {:.3e}", worst)};
}

Outcome check_trajectory(const ScenarioConfig& sc) {
  ScenarioConfig run = sc;
  run.stepper.t_end = std::min(sc.stepper.t_end, 0.5);
  run.stepper.record_every = 1;
  run.stepper.store_fields = true;
  auto mesh = std::make_shared<const Mesh>(uniform_mesh(run.n_cells));
  const auto result = run_simulation(initial_field(run, mesh), run.params, run.stepper);
  const auto& st = result.newton;
  bool ok = st.max_final_residual <= run.stepper.newton_tol;
  if (run.params.mode == BoundaryMode::both_neumann_control) ok = ok && result.max_lyapunov_increase <= 1e-6;
  if (run.params.mode == BoundaryMode::dirichlet_left_control_right) {
    ok = ok && std::all_of(result.fields.begin(), result.fields.end(),
                           [](const NodalField& w) { return w.left() == 0.0; });
  }
  return {ok, fmt::format("t_end {} steps {} max iters {} lyapunov increase {:.3e}",
                          run.stepper.t_end, st.steps, st.max_iterations,
                          result.max_lyapunov_increase)};
}

}  // namespace

int run_invariant_checks(const std::optional<ScenarioConfig>& scenario) {
  ScenarioConfig sc;
  sc.params = {0.5, 0.5, 3.0, 1.0, 1.0, BoundaryMode::both_neumann_control};
  sc.stepper.t_end = 0.5;
  if (scenario) sc = *scenario;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"operator structure (symmetry, kernels, partition of unity)", check_operator_structure},
      {"discrete Laplacian defining identity", check_discrete_laplacian},
      {"scheme Jacobian vs central differences", [&] { return check_scheme_jacobian(sc.params); }},
      {"elliptic projection reproduces V_h", check_projection_identity},
      {"Agmon and Poincare-Wirtinger bounds", check_norm_inequalities},
      {"trajectory invariants", [&] { return check_trajectory(sc); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    fmt::print("[{}] {}: {}\n", o.ok ? "PASS" : "FAIL", name, o.detail);
    if (!o.ok) ++failed;
  }
  return failed;
}

}  // namespace bbmb::tools
