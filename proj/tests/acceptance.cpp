// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: bbmb_acceptance [config_dir]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bbmb/analysis.hpp"
#include "bbmb/norms.hpp"
#include "bbmb/scenario.hpp"
#include "oracles.hpp"

using namespace bbmb;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kUncontrolledFloor = 0.5;
constexpr double kRateSlack = 0.95;
constexpr double kLyapunovTol = 1e-6;
constexpr double kOrderLo = 1.8;
constexpr double kOrderHi = 2.2;
constexpr double kTnormLo = 0.8;
constexpr double kTnormHi = 1.2;
constexpr double kOracleTol = 1e-12;
constexpr double kJacobianTol = 1e-6;
constexpr double kProjectionSlack = 0.2;
constexpr int kMaxNewton = 10;
constexpr double kNewtonTol = 1e-10;
constexpr double kQuadraticConstant = 100.0;
constexpr double kPerturbation = 1e-3;
constexpr double kDependenceKappa = 100.0;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct Loaded {
  ScenarioConfig cfg;
  std::shared_ptr<const Mesh> mesh;
  NodalField w0;
};

Loaded load(const fs::path& path) {
  auto cfg = ScenarioConfig::from_file(path);
  auto mesh = std::make_shared<const Mesh>(uniform_mesh(cfg.n_cells));
  auto w0 = initial_field(cfg, mesh);
  return {std::move(cfg), std::move(mesh), std::move(w0)};
}

struct NewtonTally {
  std::string name;
  NewtonStats stats;
};

std::vector<NewtonTally> tallies;

SimulationResult simulate(const std::string& name, const Loaded& s) {
  auto r = run_simulation(s.w0, s.cfg.params, s.cfg.stepper);
  tallies.push_back({name, r.newton});
  return r;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double max_dense_diff(const TriDiag& t, const oracle::Dense& d) {
  double e = 0.0;
  const auto td = t.to_dense();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) e = std::max(e, std::abs(td[i][j] - d[i][j]));
  return e;
}

// Worst relative mismatch between an analytic Jacobian and central differences of f.
double jacobian_fd_error(const TriDiag& j, const NodalField& w,
                         const std::function<std::vector<double>(const NodalField&)>& f) {
  const double eps = 1e-6;
  double worst = 0.0;
  for (std::size_t col = 0; col < w.size(); ++col) {
    NodalField wp = w, wm = w;
    wp[col] += eps;
    wm[col] -= eps;
    const auto fp = f(wp);
    const auto fm = f(wm);
    for (std::size_t row = 0; row < w.size(); ++row) {
      const double fd = (fp[row] - fm[row]) / (2.0 * eps);
      worst = std::max(worst, std::abs(j.at(row, col) - fd) / std::max(1.0, std::abs(fd)));
    }
  }
  return worst;
}

void criterion6() {
  std::mt19937 rng(2024);
  double op_err = 0.0;
  double lap_err = 0.0;
  double jac_err = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto x = oracle::random_nodes(n, rng);
    auto m = std::make_shared<const Mesh>(x);
    op_err = std::max({op_err, max_dense_diff(assemble_mass(*m), oracle::mass(x)),
                       max_dense_diff(assemble_stiffness(*m), oracle::stiffness(x)),
                       max_dense_diff(assemble_convection(*m), oracle::convection(x))});

    const NodalField v(m, oracle::random_values(n + 1, rng));
    const auto chi = oracle::random_values(n + 1, rng);
    const auto z = discrete_laplacian_apply(v, assemble_mass(*m), assemble_stiffness(*m));
    const double lhs = -oracle::integrate(x, [&](std::size_t c, double t) {
      return oracle::field_on_cell(x, z.values(), c, t) * oracle::field_on_cell(x, chi, c, t);
    });
    const double rhs = oracle::integrate(x, [&](std::size_t c, double) {
                         return oracle::field_slope(x, v.values(), c) * oracle::field_slope(x, chi, c);
                       }) +
                       v.left_slope() * chi[0] - v.right_slope() * chi[n];
    lap_err = std::max(lap_err, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

    const auto ops = SchemeOperators::assemble(m);
    const NodalField w_old(m, oracle::random_values(n + 1, rng));
    StepperConfig cfg;
    cfg.dt = 1e-2;
    for (auto mode : {BoundaryMode::both_neumann_control, BoundaryMode::uncontrolled_zero_neumann,
                      BoundaryMode::dirichlet_left_control_right}) {
      ModelParams p;
      p.mode = mode;
      jac_err = std::max(jac_err, jacobian_fd_error(jacobian(v, p, cfg, ops), v, [&](const NodalField& u) {
                           return residual(u, w_old, p, cfg, ops);
                         }));
    }
    jac_err = std::max(jac_err, jacobian_fd_error(nonlinear_convection_jacobian(v), v,
                                                  [](const NodalField& u) { return nonlinear_convection(u); }));
  }
  const bool ok = op_err <= kOracleTol && lap_err <= kOracleTol && jac_err <= kJacobianTol;
  report(6, ok,
         "operator oracle err " + fmt("%.2e", op_err) + ", Laplacian identity err " + fmt("%.2e", lap_err) +
             ", Jacobian FD err " + fmt("%.2e", jac_err));
}

void criterion7() {
  using std::numbers::pi;
  const ScalarFunction f = [](double x) { return std::sin(pi * x); };
  const ScalarFunction df = [](double x) { return pi * std::cos(pi * x); };
  std::vector<double> e_l2, e_h1, e_bd;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    auto m = std::make_shared<const Mesh>(uniform_mesh(n));
    const auto p = auxiliary_projection(f, df, m);
    e_l2.push_back(l2_error(p, f));
    e_h1.push_back(h1_seminorm_error(p, df));
    e_bd.push_back(std::max(std::abs(p.left() - f(0.0)), std::abs(p.right() - f(1.0))));
  }
  bool ok = true;
  std::string detail = "orders (L2, H1, boundary):";
  for (std::size_t i = 0; i + 1 < e_l2.size(); ++i) {
    const double o2 = std::log2(e_l2[i] / e_l2[i + 1]);
    const double o1 = std::log2(e_h1[i] / e_h1[i + 1]);
    const double ob = std::log2(e_bd[i] / e_bd[i + 1]);
    ok = ok && std::abs(o2 - 2.0) <= kProjectionSlack && std::abs(o1 - 1.0) <= kProjectionSlack &&
         std::abs(ob - 2.0) <= kProjectionSlack;
    detail += " (" + fmt("%.3f", o2) + ", " + fmt("%.3f", o1) + ", " + fmt("%.3f", ob) + ")";
  }
  report(7, ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(BBMB_CONFIG_DIR);

  // 1. Uncontrolled baseline.
  const auto unc = load(dir / "example1_uncontrolled.cfg");
  const auto r_unc = simulate("example1_uncontrolled", unc);
  report(1, r_unc.l2.back() >= kUncontrolledFloor * r_unc.l2.front(),
         "uncontrolled final/initial L2 = " + fmt("%.4g", r_unc.l2.back() / r_unc.l2.front()) + " (need >= 0.5)");

  // 2. Controlled decay rate and Lyapunov monotonicity.
  const auto c1 = load(dir / "example1_controlled_c1.cfg");
  const auto r_c1 = simulate("example1_controlled_c1", c1);
  const double alpha = alpha_bound(c1.cfg.params);
  const double rate1 = fit_decay_rate(r_c1.times, r_c1.l2);
  report(2, rate1 >= kRateSlack * alpha && r_c1.max_lyapunov_increase <= kLyapunovTol,
         "fitted rate " + fmt("%.4f", rate1) + " vs bound " + fmt("%.4f", alpha) +
             ", max Lyapunov step increase " + fmt("%.2e", r_c1.max_lyapunov_increase));

  // 3. Gain ordering.
  const auto c01 = load(dir / "example1_controlled_c0p1.cfg");
  const auto r_c01 = simulate("example1_controlled_c0p1", c01);
  const double rate01 = fit_decay_rate(r_c01.times, r_c01.l2);
  report(3, rate01 < rate1, "rate at c = 0.1: " + fmt("%.4f", rate01) + ", at c = 1: " + fmt("%.4f", rate1));

  // 4. Convergence orders against a 640-cell reference.
  {
    const auto conv = ScenarioConfig::from_file(dir / "example1_convergence.cfg");
    const std::vector<std::size_t> cells{10, 20, 40, 80};
    const auto rows = convergence_study(conv.params, conv.stepper, cells, 8, 1.0, make_projector(conv));
    bool ok = true;
    std::string detail = "orders (L2, Linf, tnorm, v0, v1):";
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& r = rows[i];
      for (double o : {*r.order_l2, *r.order_linf, *r.order_v0, *r.order_v1})
        ok = ok && o >= kOrderLo && o <= kOrderHi;
      ok = ok && *r.order_tnorm >= kTnormLo && *r.order_tnorm <= kTnormHi;
      detail += " (" + fmt("%.3f", *r.order_l2) + ", " + fmt("%.3f", *r.order_linf) + ", " +
                fmt("%.3f", *r.order_tnorm) + ", " + fmt("%.3f", *r.order_v0) + ", " + fmt("%.3f", *r.order_v1) +
                ")";
    }
    report(4, ok, detail);
  }

  // 5. mu -> 0 limit.
  {
    const auto sw = load(dir / "example2_mu_sweep.cfg");
    const std::vector<double> mus{0.5, 0.1, 0.01, 0.001, 0.0};
    const auto sweep = mu_sweep(sw.cfg.params, sw.cfg.stepper, mus, sw.cfg.n_cells, make_projector(sw.cfg));
    bool ok = true;
    std::string detail = "sup deviations:";
    for (std::size_t i = 0; i < mus.size(); ++i) {
      tallies.push_back({"example2_mu_sweep mu=" + fmt("%g", mus[i]), sweep.runs[i].newton});
      detail += " " + fmt("%.4g", sweep.deviations[i]);
      if (i + 1 < mus.size() - 1) ok = ok && sweep.deviations[i + 1] < sweep.deviations[i];
    }
    report(5, ok, detail + " (mu = 0.5, 0.1, 0.01, 0.001, 0)");
  }

  criterion6();
  criterion7();

  // 8. Newton robustness across every shipped scenario.
  {
    (void)simulate("example1_controlled_c10", load(dir / "example1_controlled_c10.cfg"));
    for (const char* name : {"example2_dirichlet_c1_0p1", "example2_dirichlet_c1_1", "example2_dirichlet_c1_10"}) {
      (void)simulate(name, load(dir / (std::string(name) + ".cfg")));
    }
    (void)simulate("example1_convergence", load(dir / "example1_convergence.cfg"));
    bool ok = true;
    int worst_iters = 0;
    double worst_ratio = 0.0;
    double worst_residual = 0.0;
    std::string floors;
    for (const auto& t : tallies) {
      // A step accepted at the rounding floor did not reach kNewtonTol.
      ok = ok && t.stats.max_iterations <= kMaxNewton && t.stats.max_final_residual <= kNewtonTol &&
           t.stats.floor_limited_steps == 0 && t.stats.max_quadratic_ratio <= kQuadraticConstant;
      worst_iters = std::max(worst_iters, t.stats.max_iterations);
      worst_ratio = std::max(worst_ratio, t.stats.max_quadratic_ratio);
      worst_residual = std::max(worst_residual, t.stats.max_final_residual);
      if (t.stats.floor_limited_steps > 0) {
        floors += " " + t.name + ": " + std::to_string(t.stats.floor_limited_steps) + "/" +
                  std::to_string(t.stats.steps);
      }
    }
    report(8, ok,
           std::to_string(tallies.size()) + " runs, max iterations " + std::to_string(worst_iters) +
               ", max k*|R| at tol " + fmt("%.2e", worst_residual) + ", max r_{m+1}/r_m^2 " +
               fmt("%.3g", worst_ratio) + "; steps that stalled at the rounding floor above tol:" +
               (floors.empty() ? std::string(" none") : floors));
  }

  // 9. Continuous dependence and bitwise uniqueness.
  {
    const auto base = load(dir / "example1_controlled_c1.cfg");
    NodalField w2 = base.w0;
    for (double& v : w2.values()) v += kPerturbation;
    const auto pert = continuous_dependence_check(base.w0, w2, base.cfg.params, base.cfg.stepper, kDependenceKappa);
    const auto same = continuous_dependence_check(base.w0, base.w0, base.cfg.params, base.cfg.stepper, kDependenceKappa);
    const bool ok = pert.passed && pert.sup_d <= kDependenceKappa * pert.d0 && same.identical && same.sup_d == 0.0;
    report(9, ok,
           "sup D / D(0) = " + fmt("%.4g", pert.sup_d / pert.d0) + " (need <= 100); identical inputs bitwise equal: " +
               (same.identical ? "yes" : "no"));
  }

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
