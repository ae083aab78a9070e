#include "bbmb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "bbmb/quadrature.hpp"

namespace bbmb {

namespace {

template <typename Integrand>
double integrate_cells(const Mesh& m, Integrand&& g) {
  static const QuadratureRule rule = gauss_legendre(6);
  double s = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const double a = m.nodes()[c];
    const double h = m.width(c);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      s += rule.weights[q] * h * g(c, a + rule.points[q] * h, rule.points[q]);
    }
  }
  return s;
}

}  // namespace

double l2_error(const NodalField& w, const ScalarFunction& f) {
  const double s = integrate_cells(w.mesh(), [&](std::size_t c, double x, double t) {
    const double d = f(x) - ((1.0 - t) * w[c] + t * w[c + 1]);
    return d * d;
  });
  return std::sqrt(s);
}

double h1_seminorm_error(const NodalField& w, const ScalarFunction& df) {
  const Mesh& m = w.mesh();
  const double s = integrate_cells(m, [&](std::size_t c, double x, double) {
    const double d = df(x) - (w[c + 1] - w[c]) / m.width(c);
    return d * d;
  });
  return std::sqrt(s);
}

double fit_decay_rate(std::span<const double> times, std::span<const double> values,
                      double skip_fraction) {
  if (times.size() != values.size()) throw std::invalid_argument("fit_decay_rate: size mismatch");
  if (skip_fraction < 0.0 || skip_fraction >= 1.0) {
    throw std::invalid_argument("fit_decay_rate: skip_fraction must lie in [0, 1)");
  }
  const auto skip =
      static_cast<std::size_t>(std::floor(skip_fraction * static_cast<double>(times.size())));
  if (times.size() < skip + 2) throw std::invalid_argument("fit_decay_rate: need two samples in window");

  const std::size_t n = times.size() - skip;
  double st = 0.0;
  double sy = 0.0;
  for (std::size_t i = skip; i < times.size(); ++i) {
    if (!(values[i] > 0.0)) throw std::invalid_argument("fit_decay_rate: nonpositive value in window");
    st += times[i];
    sy += -std::log(values[i]);
  }
  const double tbar = st / static_cast<double>(n);
  const double ybar = sy / static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = skip; i < times.size(); ++i) {
    const double dt = times[i] - tbar;
    num += dt * (-std::log(values[i]) - ybar);
    den += dt * dt;
  }
  if (den == 0.0) throw std::invalid_argument("fit_decay_rate: times are all equal");
  return num / den;
}

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

void compute_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    auto& b = rows[i];
    auto order = [&](double ea, double eb) { return observed_order(ea, eb, a.h, b.h); };
    b.order_l2 = order(a.e_l2, b.e_l2);
    b.order_linf = order(a.e_linf, b.e_linf);
    b.order_tnorm = order(a.e_tnorm, b.e_tnorm);
    b.order_v0 = order(a.e_v0, b.e_v0);
    b.order_v1 = order(a.e_v1, b.e_v1);
  }
}

std::vector<ConvergenceRow> convergence_study(const ModelParams& p, const StepperConfig& cfg,
                                              std::span<const std::size_t> cell_counts,
                                              std::size_t ref_factor, double t_eval,
                                              const InitialProjector& initial) {
  if (cell_counts.empty()) throw std::invalid_argument("convergence_study: no meshes given");
  if (ref_factor < 4) throw std::invalid_argument("convergence_study: ref_factor must be >= 4");
  for (std::size_t i = 1; i < cell_counts.size(); ++i) {
    if (cell_counts[i] <= cell_counts[i - 1] || cell_counts[i] % cell_counts[i - 1] != 0) {
      throw std::invalid_argument("convergence_study: mesh family is not nested and refining");
    }
  }

  StepperConfig run_cfg = cfg;
  run_cfg.t_end = t_eval;
  run_cfg.store_fields = false;
  run_cfg.record_every = std::max<std::size_t>(1, run_cfg.num_steps());

  auto solve_on = [&](std::size_t n_cells) {
    auto mesh = std::make_shared<const Mesh>(uniform_mesh(n_cells));
    return run_simulation(initial(mesh), p, run_cfg);
  };

  const std::size_t ref_cells = cell_counts.back() * ref_factor;
  auto ref_future = std::async(std::launch::async, solve_on, ref_cells);
  std::vector<std::future<SimulationResult>> futures;
  futures.reserve(cell_counts.size());
  for (std::size_t n : cell_counts) futures.push_back(std::async(std::launch::async, solve_on, n));

  const SimulationResult ref = ref_future.get();
  const NodalField& w_ref = *ref.final_state;
  const auto ref_mesh = w_ref.mesh_ptr();

  std::vector<ConvergenceRow> rows;
  rows.reserve(cell_counts.size());
  for (std::size_t i = 0; i < cell_counts.size(); ++i) {
    const SimulationResult run = futures[i].get();
    const NodalField& w_h = *run.final_state;
    const NodalField err = prolong(w_h, ref_mesh) - w_ref;
    ConvergenceRow row;
    row.h = w_h.mesh().h_max();
    row.e_l2 = l2_norm(err);
    row.e_linf = linf_norm(err);
    row.e_tnorm = tnorm(err);
    row.e_v0 = std::abs(run.energy.back().v0 - ref.energy.back().v0);
    row.e_v1 = std::abs(run.energy.back().v1 - ref.energy.back().v1);
    rows.push_back(row);
  }
  compute_orders(rows);
  return rows;
}

MuSweepResult mu_sweep(const ModelParams& base, const StepperConfig& cfg,
                       std::span<const double> mus, std::size_t n_cells,
                       const InitialProjector& initial) {
  const auto zero = std::find(mus.begin(), mus.end(), 0.0);
  if (zero == mus.end()) throw std::invalid_argument("mu_sweep: mu list must contain 0");

  auto mesh = std::make_shared<const Mesh>(uniform_mesh(n_cells));
  const NodalField w0 = initial(mesh);

  std::vector<std::future<SimulationResult>> futures;
  for (double mu : mus) {
    ModelParams p = base;
    p.mu = mu;
    futures.push_back(
        std::async(std::launch::async, [p, &cfg, &w0] { return run_simulation(w0, p, cfg); }));
  }

  MuSweepResult out;
  out.mus.assign(mus.begin(), mus.end());
  for (auto& f : futures) out.runs.push_back(f.get());

  const auto& burgers = out.runs[static_cast<std::size_t>(zero - mus.begin())].l2;
  for (const auto& run : out.runs) {
    double dev = 0.0;
    for (std::size_t i = 0; i < run.l2.size(); ++i) {
      dev = std::max(dev, std::abs(run.l2[i] - burgers[i]));
    }
    out.deviations.push_back(dev);
  }
  return out;
}

ContinuousDependenceReport continuous_dependence_check(const NodalField& w10,
                                                       const NodalField& w20,
                                                       const ModelParams& p,
                                                       const StepperConfig& cfg, double kappa) {
  if (!w10.same_mesh(w20)) throw std::invalid_argument("continuous_dependence_check: mesh mismatch");
  StepperConfig run_cfg = cfg;
  run_cfg.store_fields = true;

  auto f1 = std::async(std::launch::async, [&] { return run_simulation(w10, p, run_cfg); });
  const SimulationResult r2 = run_simulation(w20, p, run_cfg);
  const SimulationResult r1 = f1.get();

  ContinuousDependenceReport rep;
  rep.kappa = kappa;
  rep.times = r1.times;
  rep.identical = true;
  for (std::size_t i = 0; i < r1.fields.size(); ++i) {
    const NodalField& a = r1.fields[i];
    const NodalField z = a - r2.fields[i];
    const double l2 = l2_norm(z);
    const double dx = h1_seminorm(z);
    rep.d_values.push_back(l2 * l2 + p.mu * dx * dx + energy_e4(z, a, p));
    if (!std::equal(a.values().begin(), a.values().end(), r2.fields[i].values().begin())) {
      rep.identical = false;
    }
  }
  rep.d0 = rep.d_values.front();
  rep.sup_d = *std::max_element(rep.d_values.begin(), rep.d_values.end());
  rep.passed = rep.d0 > 0.0 ? rep.sup_d <= kappa * rep.d0 : rep.sup_d == 0.0;
  return rep;
}

}  // namespace bbmb
