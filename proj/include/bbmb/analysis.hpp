#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bbmb/feedback.hpp"
#include "bbmb/fem1d.hpp"
#include "bbmb/norms.hpp"
#include "bbmb/stepper.hpp"

namespace bbmb {

/// Produces the discrete initial state W^0 on a given mesh.
using InitialProjector = std::function<NodalField(std::shared_ptr<const Mesh>)>;

/// ||f - w||_{L2} by 6-point Gauss per cell.
[[nodiscard]] double l2_error(const NodalField& w, const ScalarFunction& f);
/// ||f' - w_x||_{L2} by 6-point Gauss per cell.
[[nodiscard]] double h1_seminorm_error(const NodalField& w, const ScalarFunction& df);

/// Least-squares slope of -ln(values) against time, after dropping the first
/// `skip_fraction` of the samples. A series exp(-a t) yields a.
[[nodiscard]] double fit_decay_rate(std::span<const double> times, std::span<const double> values,
                                    double skip_fraction = 0.1);

/// Observed order between two error levels at mesh sizes h_coarse > h_fine.
[[nodiscard]] double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

struct ConvergenceRow {
  double h{0.0};
  double e_l2{0.0};
  double e_linf{0.0};
  double e_tnorm{0.0};
  double e_v0{0.0};
  double e_v1{0.0};
  std::optional<double> order_l2;
  std::optional<double> order_linf;
  std::optional<double> order_tnorm;
  std::optional<double> order_v0;
  std::optional<double> order_v1;
};

/// Fills the order fields of rows[1..] from consecutive error pairs.
void compute_orders(std::vector<ConvergenceRow>& rows);

/// Runs the scheme on each uniform mesh in `cell_counts` and on a reference
/// mesh ref_factor times finer than the finest one, then compares at t_eval.
/// Coarse solutions are embedded exactly into the reference space before
/// the norms are taken. Cell counts must increase, each dividing the next.
[[nodiscard]] std::vector<ConvergenceRow> convergence_study(const ModelParams& p,
                                                            const StepperConfig& cfg,
                                                            std::span<const std::size_t> cell_counts,
                                                            std::size_t ref_factor, double t_eval,
                                                            const InitialProjector& initial);

struct MuSweepResult {
  std::vector<double> mus;
  std::vector<SimulationResult> runs;
  /// sup over recorded times of |l2_mu(t) - l2_0(t)|, one per entry.
  std::vector<double> deviations;
};

/// One run per mu on the same mesh; mus must contain 0.
[[nodiscard]] MuSweepResult mu_sweep(const ModelParams& base, const StepperConfig& cfg,
                                     std::span<const double> mus, std::size_t n_cells,
                                     const InitialProjector& initial);

struct ContinuousDependenceReport {
  std::vector<double> times;
  /// ||z||^2 + mu ||z_x||^2 + E4 with z = w1 - w2.
  std::vector<double> d_values;
  double d0{0.0};
  double sup_d{0.0};
  double kappa{100.0};
  bool identical{false};
  bool passed{false};
};

[[nodiscard]] ContinuousDependenceReport continuous_dependence_check(const NodalField& w10,
                                                                     const NodalField& w20,
                                                                     const ModelParams& p,
                                                                     const StepperConfig& cfg,
                                                                     double kappa = 100.0);

}  // namespace bbmb
