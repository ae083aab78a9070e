#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bbmb/feedback.hpp"
#include "bbmb/fem1d.hpp"
#include "bbmb/tridiag.hpp"

namespace bbmb {

struct StepperConfig {
  double dt{1e-4};
  double t_end{1.0};
  /// Bound on k * ||R||_inf, see advance_step.
  double newton_tol{1e-10};
  int newton_max_iters{25};
  std::size_t record_every{1};
  /// Keep a copy of the state at every recorded instant.
  bool store_fields{false};

  void validate() const;
  [[nodiscard]] std::size_t num_steps() const;
};

/// Mesh-dependent matrices shared by every step of a run.
struct SchemeOperators {
  std::shared_ptr<const Mesh> mesh;
  TriDiag mass;
  TriDiag stiffness;
  TriDiag convection;

  [[nodiscard]] static SchemeOperators assemble(std::shared_ptr<const Mesh> mesh);
};

/// Newton failed to reach the tolerance within the iteration budget.
class NewtonDivergence : public std::runtime_error {
public:
  NewtonDivergence(double residual_norm, int iterations, std::optional<double> time = {});

  [[nodiscard]] double residual_norm() const noexcept { return residual_norm_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }
  [[nodiscard]] std::optional<double> time() const noexcept { return time_; }

private:
  double residual_norm_;
  int iterations_;
  std::optional<double> time_;
};

/// Nonlinear residual of one backward Euler step:
///
///   M dW/k + mu A dW/k + nu A W + (1 + w_d) B W + N(W)
///     + sum_i [a_i W(i) + q_i W(i)^3 + (mu/nu)(a_i dW(i) + q_i (W(i)^3 - W_old(i)^3))/k] e_i
///
/// with dW = W - W_old, a_i = 1 + c_i + w_d, q_i = 2/(9 c_i), summed over
/// the controlled boundaries. In Dirichlet-left mode row 0 is W(0).
[[nodiscard]] std::vector<double> residual(const NodalField& w_new, const NodalField& w_old,
                                           const ModelParams& p, const StepperConfig& cfg,
                                           const SchemeOperators& ops);

/// Exact derivative of residual() with respect to w_new.
[[nodiscard]] TriDiag jacobian(const NodalField& w_new, const ModelParams& p,
                               const StepperConfig& cfg, const SchemeOperators& ops);

struct StepReport {
  NodalField state;
  /// Residual evaluations, including the one that met the tolerance.
  int iterations{0};
  /// k * ||R||_inf before each Newton update and at acceptance.
  std::vector<double> residual_history;
  /// Accepted at the rounding floor rather than at newton_tol.
  bool floor_limited{false};
  /// Last estimate of the attainable k * ||R||_inf (0 if never needed).
  double rounding_floor{0.0};
};

inline constexpr double kRoundingFloorFactor = 8.0;

/// Solves one step by Newton's method starting from w_old.
///
/// The stopping test is k * ||R||_inf <= newton_tol, i.e. the residual of
/// the step equation multiplied through by the time step. The unscaled
/// residual carries mu A / k, whose rounding floor at k = 1e-4 already sits
/// near 1e-9. For very large states even the scaled residual bottoms out
/// above newton_tol; the step is then accepted once the residual falls below
/// 8 eps k ||J||_inf max(1, ||W||_inf) and marked floor_limited. Throws
/// NewtonDivergence when the budget runs out.
[[nodiscard]] StepReport advance_step(const NodalField& w_old, const ModelParams& p,
                                      const StepperConfig& cfg, const SchemeOperators& ops);

struct NewtonStats {
  std::size_t steps{0};
  int max_iterations{0};
  double mean_iterations{0.0};
  /// max of r_{m+1} / r_m^2 over consecutive scaled residuals with
  /// r_m <= kQuadraticRegime and r_{m+1} clear of rounding noise.
  double max_quadratic_ratio{0.0};
  std::size_t quadratic_samples{0};
  /// Largest accepted k * ||R||_inf among steps that met newton_tol.
  double max_final_residual{0.0};
  /// Steps accepted at the rounding floor.
  std::size_t floor_limited_steps{0};
};

inline constexpr double kQuadraticRegime = 1e-3;
/// Pairs whose second residual lies within this factor of the step's
/// rounding floor are excluded from the contraction statistic.
inline constexpr double kQuadraticNoiseFactor = 10.0;

struct SimulationResult {
  std::vector<double> times;
  std::vector<EnergySample> energy;
  std::vector<double> l2;
  std::vector<double> linf;
  std::vector<double> tnorm;
  /// Newton iterations of the step ending at each recorded time (0 at t = 0).
  std::vector<int> newton_iters;
  std::vector<NodalField> fields;
  NewtonStats newton;
  /// max over steps of (L_n - L_{n-1}) / L_{n-1} for the Lyapunov value L.
  double max_lyapunov_increase{0.0};
  std::optional<NodalField> final_state;
};

/// Runs the scheme from w0h to cfg.t_end. NewtonDivergence is rethrown with
/// the failing time attached.
[[nodiscard]] SimulationResult run_simulation(const NodalField& w0h, const ModelParams& p,
                                              const StepperConfig& cfg);

/// ||w||^2 + mu ||w_x||^2 + (mu/nu) E1(w).
[[nodiscard]] double lyapunov_value(const NodalField& w, const ModelParams& p);

}  // namespace bbmb
