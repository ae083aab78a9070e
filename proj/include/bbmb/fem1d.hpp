#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "bbmb/mesh.hpp"
#include "bbmb/tridiag.hpp"

namespace bbmb {

using ScalarFunction = std::function<double(double)>;

/// Continuous piecewise-linear function on a mesh, stored by nodal values.
class NodalField {
public:
  /// Zero field.
  explicit NodalField(std::shared_ptr<const Mesh> mesh);
  NodalField(std::shared_ptr<const Mesh> mesh, std::vector<double> values);

  [[nodiscard]] const Mesh& mesh() const noexcept { return *mesh_; }
  [[nodiscard]] const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

  double& operator[](std::size_t j) { return values_[j]; }
  double operator[](std::size_t j) const { return values_[j]; }

  [[nodiscard]] double left() const noexcept { return values_.front(); }
  [[nodiscard]] double right() const noexcept { return values_.back(); }
  /// One-sided slopes on the first and last cell.
  [[nodiscard]] double left_slope() const;
  [[nodiscard]] double right_slope() const;

  /// Value of the interpolant at x in [0, 1].
  [[nodiscard]] double evaluate(double x) const;
  /// Derivative on the cell containing x (right cell at interior nodes).
  [[nodiscard]] double derivative(double x) const;

  [[nodiscard]] bool same_mesh(const NodalField& other) const noexcept;

private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<double> values_;
};

[[nodiscard]] NodalField operator-(const NodalField& a, const NodalField& b);
[[nodiscard]] NodalField operator*(double s, const NodalField& a);

/// Nodal interpolant of f.
[[nodiscard]] NodalField interpolate(std::shared_ptr<const Mesh> mesh, const ScalarFunction& f);

/// Re-expresses a field on a finer nested mesh. Exact, since the coarse space
/// is a subspace of the fine one.
[[nodiscard]] NodalField prolong(const NodalField& coarse, std::shared_ptr<const Mesh> fine);

/// M_ij = (phi_j, phi_i).
[[nodiscard]] TriDiag assemble_mass(const Mesh& mesh);
/// A_ij = (phi_j', phi_i').
[[nodiscard]] TriDiag assemble_stiffness(const Mesh& mesh);
/// B_ij = (phi_j', phi_i).
[[nodiscard]] TriDiag assemble_convection(const Mesh& mesh);

/// N_i(w) = (w w_x, phi_i), integrated exactly cell by cell.
[[nodiscard]] std::vector<double> nonlinear_convection(const NodalField& w);
/// dN_i/dw_j.
[[nodiscard]] TriDiag nonlinear_convection_jacobian(const NodalField& w);

/// Discrete Laplacian: solves M z = -(A v + v_x(0) e_0 - v_x(1) e_N), so that
/// (-Lap_h v, chi) = (v_x, chi_x) + v_x(0) chi(0) - v_x(1) chi(1) on V_h.
[[nodiscard]] NodalField discrete_laplacian_apply(const NodalField& v, const TriDiag& mass,
                                                  const TriDiag& stiffness);

/// Elliptic projection: (f' - p_x, chi_x) + lambda (f - p, chi) = 0 for all
/// chi in V_h. Loads use 4-point Gauss per cell. With lambda = 1 this is the
/// H^1 projection used for initial data.
[[nodiscard]] NodalField auxiliary_projection(const ScalarFunction& f, const ScalarFunction& df,
                                              std::shared_ptr<const Mesh> mesh,
                                              double lambda = 1.0);

}  // namespace bbmb
