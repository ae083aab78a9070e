#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bbmb/norms.hpp"
#include "bbmb/scenario.hpp"
#include "bbmb/stepper.hpp"
#include "oracles.hpp"

using namespace bbmb;

namespace {

std::shared_ptr<const Mesh> mesh_of(std::size_t n) { return std::make_shared<const Mesh>(uniform_mesh(n)); }

ModelParams example1(BoundaryMode mode = BoundaryMode::both_neumann_control) {
  ModelParams p;
  p.mode = mode;
  return p;
}

NodalField example1_initial(std::shared_ptr<const Mesh> m) {
  const auto prof = example1_profile();
  return auxiliary_projection(prof.f, prof.df, std::move(m));
}

// Step residual assembled from dense quadrature matrices.
std::vector<double> dense_residual(std::span<const double> x, std::span<const double> w,
                                   std::span<const double> w_old, const ModelParams& p, double k) {
  const std::size_t n = w.size();
  std::vector<double> dw(n);
  for (std::size_t j = 0; j < n; ++j) dw[j] = w[j] - w_old[j];
  const auto m_dw = oracle::matvec(oracle::mass(x), dw);
  const auto a = oracle::stiffness(x);
  const auto a_dw = oracle::matvec(a, dw);
  const auto a_w = oracle::matvec(a, w);
  const auto b_w = oracle::matvec(oracle::convection(x), w);
  const auto nl = oracle::nonlinear(x, w);
  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j)
    r[j] = m_dw[j] / k + p.mu * a_dw[j] / k + p.nu * a_w[j] + (1.0 + p.w_d) * b_w[j] + nl[j];
  auto boundary = [&](std::size_t node, double c) {
    const double a_i = 1.0 + c + p.w_d;
    const double q_i = 2.0 / (9.0 * c);
    const double g_new = a_i * w[node] + q_i * std::pow(w[node], 3);
    const double g_old = a_i * w_old[node] + q_i * std::pow(w_old[node], 3);
    r[node] += g_new + p.mu / p.nu * (g_new - g_old) / k;
  };
  if (p.left_controlled()) boundary(0, p.c0);
  if (p.right_controlled()) boundary(n - 1, p.c1);
  if (p.mode == BoundaryMode::dirichlet_left_control_right) r[0] = w[0];
  return r;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace

TEST(Stepper, ConfigValidation) {
  StepperConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.num_steps(), 10000u);
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.newton_max_iters = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Stepper, ResidualMatchesDenseOracle) {
  std::mt19937 rng(101);
  for (auto mode : {BoundaryMode::both_neumann_control, BoundaryMode::uncontrolled_zero_neumann,
                    BoundaryMode::dirichlet_left_control_right}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 1 + trial % 5;
      const auto x = oracle::random_nodes(n, rng);
      auto m = std::make_shared<const Mesh>(x);
      const NodalField w(m, oracle::random_values(n + 1, rng));
      const NodalField w_old(m, oracle::random_values(n + 1, rng));
      ModelParams p = example1(mode);
      p.c0 = 0.3;
      p.c1 = 4.0;
      StepperConfig cfg;
      cfg.dt = 0.01;
      const auto ops = SchemeOperators::assemble(m);
      const auto r = residual(w, w_old, p, cfg, ops);
      const auto ref = dense_residual(x, w.values(), w_old.values(), p, cfg.dt);
      for (std::size_t j = 0; j <= n; ++j) EXPECT_NEAR(r[j], ref[j], 1e-10 * std::max(1.0, std::abs(ref[j])));
    }
  }
}

TEST(Stepper, ZeroStateIsFixedPoint) {
  auto m = mesh_of(6);
  const NodalField z(m);
  const auto ops = SchemeOperators::assemble(m);
  for (auto mode : {BoundaryMode::both_neumann_control, BoundaryMode::uncontrolled_zero_neumann,
                    BoundaryMode::dirichlet_left_control_right}) {
    const auto r = residual(z, z, example1(mode), StepperConfig{}, ops);
    EXPECT_EQ(max_abs(r), 0.0);
  }
}

TEST(Stepper, UncontrolledConstantStateIsSteady) {
  auto m = mesh_of(6);
  const NodalField c(m, std::vector<double>(7, 0.8));
  const auto r = residual(c, c, example1(BoundaryMode::uncontrolled_zero_neumann), StepperConfig{},
                          SchemeOperators::assemble(m));
  EXPECT_LE(max_abs(r), 1e-13);
}

TEST(Stepper, JacobianFiniteDifference) {
  std::mt19937 rng(103);
  for (auto mode : {BoundaryMode::both_neumann_control, BoundaryMode::uncontrolled_zero_neumann,
                    BoundaryMode::dirichlet_left_control_right}) {
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t n = 2 + trial;
      auto m = std::make_shared<const Mesh>(oracle::random_nodes(n, rng));
      const auto ops = SchemeOperators::assemble(m);
      const NodalField w(m, oracle::random_values(n + 1, rng));
      const NodalField w_old(m, oracle::random_values(n + 1, rng));
      const ModelParams p = example1(mode);
      StepperConfig cfg;
      cfg.dt = 1e-2;
      const auto j = jacobian(w, p, cfg, ops);
      const double eps = 1e-6;
      for (std::size_t col = 0; col <= n; ++col) {
        NodalField wp = w, wm = w;
        wp[col] += eps;
        wm[col] -= eps;
        const auto rp = residual(wp, w_old, p, cfg, ops);
        const auto rm = residual(wm, w_old, p, cfg, ops);
        for (std::size_t row = 0; row <= n; ++row) {
          const double fd = (rp[row] - rm[row]) / (2.0 * eps);
          EXPECT_NEAR(j.at(row, col), fd, 1e-6 * std::max(1.0, std::abs(fd)));
        }
      }
    }
  }
}

TEST(Stepper, JacobianBoundaryEntry) {
  // With mu = 0 and W = 0 the feedback adds exactly 1 + c + w_d on the diagonal.
  auto m = mesh_of(4);
  const auto ops = SchemeOperators::assemble(m);
  ModelParams p = example1();
  p.mu = 0.0;
  p.c0 = 2.0;
  StepperConfig cfg;
  cfg.dt = 0.1;
  const auto j = jacobian(NodalField(m), p, cfg, ops);
  const double base0 = ops.mass.at(0, 0) / cfg.dt + p.nu * ops.stiffness.at(0, 0) +
                       (1.0 + p.w_d) * ops.convection.at(0, 0);
  EXPECT_NEAR(j.at(0, 0) - base0, 1.0 + 2.0 + 3.0, 1e-12);
}

TEST(Stepper, JacobianSymmetricWithoutTransport) {
  // 1 + w_d = 0 removes the linear transport; at W = 0 the nonlinear part vanishes too.
  std::mt19937 rng(107);
  auto m = std::make_shared<const Mesh>(oracle::random_nodes(7, rng));
  ModelParams p;
  p.w_d = -1.0;
  const auto j = jacobian(NodalField(m), p, StepperConfig{}, SchemeOperators::assemble(m));
  for (std::size_t i = 0; i + 1 < j.size(); ++i) EXPECT_NEAR(j.upper[i], j.lower[i], 1e-12);
}

TEST(Stepper, NewtonMatchesDenseOracle) {
  const std::vector<double> x{0.0, 0.4, 1.0};
  auto m = std::make_shared<const Mesh>(x);
  const NodalField w_old(m, {1.5, -0.5, 2.0});
  ModelParams p = example1();
  StepperConfig cfg;
  cfg.dt = 0.5;
  cfg.newton_tol = 1e-13;
  const auto step = advance_step(w_old, p, cfg, SchemeOperators::assemble(m));
  // Independent Newton with finite-difference Jacobian on the dense residual.
  std::vector<double> w(w_old.values().begin(), w_old.values().end());
  for (int it = 0; it < 50; ++it) {
    const auto r = dense_residual(x, w, w_old.values(), p, cfg.dt);
    if (max_abs(r) < 1e-14) break;
    oracle::Dense jd(3, std::vector<double>(3));
    for (std::size_t c = 0; c < 3; ++c) {
      auto wp = w, wm = w;
      wp[c] += 1e-7;
      wm[c] -= 1e-7;
      const auto rp = dense_residual(x, wp, w_old.values(), p, cfg.dt);
      const auto rm = dense_residual(x, wm, w_old.values(), p, cfg.dt);
      for (std::size_t r_ = 0; r_ < 3; ++r_) jd[r_][c] = (rp[r_] - rm[r_]) / 2e-7;
    }
    const auto d = oracle::dense_solve(jd, r);
    for (std::size_t c = 0; c < 3; ++c) w[c] -= d[c];
  }
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(step.state[j], w[j], 1e-10);
}

TEST(Stepper, ExactRootTakesOneIteration) {
  auto m = mesh_of(10);
  const auto step = advance_step(NodalField(m), example1(), StepperConfig{}, SchemeOperators::assemble(m));
  EXPECT_EQ(step.iterations, 1);
  EXPECT_FALSE(step.floor_limited);
}

TEST(Stepper, Example1StepsConvergeQuadratically) {
  auto m = mesh_of(60);
  const auto ops = SchemeOperators::assemble(m);
  const auto p = example1();
  StepperConfig cfg;
  NodalField w = example1_initial(m);
  for (int n = 0; n < 20; ++n) {
    auto step = advance_step(w, p, cfg, ops);
    EXPECT_LE(step.iterations, 10);
    const auto& h = step.residual_history;
    ASSERT_LE(h.back(), cfg.newton_tol);
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
      EXPECT_LT(h[i + 1], h[i]);
      if (h[i] <= kQuadraticRegime && h[i + 1] > 1e-14) EXPECT_LE(h[i + 1], 100.0 * h[i] * h[i]);
    }
    w = std::move(step.state);
  }
}

TEST(Stepper, ZeroInitialDataStaysZero) {
  StepperConfig cfg;
  cfg.t_end = 0.05;
  const auto res = run_simulation(NodalField(mesh_of(20)), example1(), cfg);
  ASSERT_EQ(res.times.size(), 501u);
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    EXPECT_EQ(res.l2[i], 0.0);
    EXPECT_EQ(res.linf[i], 0.0);
    EXPECT_EQ(res.tnorm[i], 0.0);
  }
  EXPECT_EQ(res.max_lyapunov_increase, 0.0);
}

TEST(Stepper, RecordingSchedule) {
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.25;
  cfg.record_every = 10;
  const auto res = run_simulation(example1_initial(mesh_of(10)), example1(), cfg);
  ASSERT_EQ(res.times.size(), 4u);
  EXPECT_EQ(res.times[0], 0.0);
  EXPECT_NEAR(res.times[1], 0.1, 1e-15);
  EXPECT_NEAR(res.times[3], 0.25, 1e-15);
  EXPECT_EQ(res.newton_iters[0], 0);
  EXPECT_EQ(res.energy[0].e3, 0.0);
  EXPECT_TRUE(res.final_state.has_value());
}

TEST(Stepper, ControlledExample1Decays) {
  const auto p = example1();
  auto m = mesh_of(60);
  const auto w0 = example1_initial(m);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 3.5;
  cfg.record_every = 50;
  const auto res = run_simulation(w0, p, cfg);
  const double alpha = alpha_bound(p);
  const double l0 = std::sqrt(lyapunov_value(w0, p));
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    EXPECT_LE(res.l2[i], std::exp(-alpha * res.times[i]) * l0 * (1.0 + 1e-9));
  }
  const std::size_t skip = res.times.size() / 10;
  for (std::size_t i = skip; i + 1 < res.times.size(); ++i) EXPECT_LT(res.l2[i + 1], res.l2[i]);
  EXPECT_LE(res.max_lyapunov_increase, 1e-6);
  EXPECT_LT(res.l2.back(), 0.1 * res.l2.front());
}

TEST(Stepper, UncontrolledExample1DoesNotDecay) {
  auto m = mesh_of(60);
  StepperConfig cfg;
  cfg.t_end = 1.0;
  cfg.record_every = 1000;
  const auto res = run_simulation(example1_initial(m), example1(BoundaryMode::uncontrolled_zero_neumann), cfg);
  EXPECT_GE(res.l2.back(), 0.5 * res.l2.front());
}

TEST(Stepper, DirichletLeftStaysPinned) {
  ScenarioConfig sc;
  sc.params.mode = BoundaryMode::dirichlet_left_control_right;
  sc.params.mu = 0.1;
  sc.params.nu = 0.1;
  sc.params.w_d = 5.0;
  sc.initial = InitialKind::sine;
  auto m = mesh_of(30);
  const auto w0 = initial_field(sc, m);
  EXPECT_EQ(w0[0], 0.0);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.store_fields = true;
  const auto res = run_simulation(w0, sc.params, cfg);
  ASSERT_EQ(res.fields.size(), res.times.size());
  for (const auto& f : res.fields) EXPECT_EQ(f[0], 0.0);
  for (const auto& e : res.energy) EXPECT_EQ(e.v0, 0.0);
}

TEST(Stepper, FirstOrderInTime) {
  auto m = mesh_of(20);
  const auto w0 = example1_initial(m);
  std::vector<NodalField> finals;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 0.4;
    cfg.record_every = 1000;
    finals.push_back(*run_simulation(w0, example1(), cfg).final_state);
  }
  const double d1 = l2_norm(finals[0] - finals[1]);
  const double d2 = l2_norm(finals[1] - finals[2]);
  EXPECT_NEAR(d1 / d2, 2.0, 0.3);
}

TEST(Stepper, DivergenceCarriesTime) {
  auto m = mesh_of(10);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.01;
  cfg.newton_max_iters = 1;
  try {
    (void)run_simulation(example1_initial(m), example1(), cfg);
    FAIL() << "expected NewtonDivergence";
  } catch (const NewtonDivergence& e) {
    ASSERT_TRUE(e.time().has_value());
    EXPECT_NEAR(*e.time(), 1e-3, 1e-15);
    EXPECT_EQ(e.iterations(), 1);
    EXPECT_GT(e.residual_norm(), cfg.newton_tol);
  }
}
