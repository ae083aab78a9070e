#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bbmb {

/// Partition 0 = x_0 < x_1 < ... < x_N = 1 of the unit interval.
///
/// Node j carries the hat function phi_j; cell j (1-based in the usual
/// notation, 0-based here) spans [x_j, x_{j+1}]. Immutable after
/// construction.
class Mesh {
public:
  /// Validates and adopts the node list. Throws std::invalid_argument if the
  /// nodes are not strictly increasing or do not start at 0 and end at 1.
  explicit Mesh(std::vector<double> nodes);

  [[nodiscard]] std::size_t num_nodes() const noexcept { return nodes_.size(); }
  [[nodiscard]] std::size_t num_cells() const noexcept { return widths_.size(); }

  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::span<const double> cell_widths() const noexcept { return widths_; }
  [[nodiscard]] double node(std::size_t j) const { return nodes_.at(j); }
  [[nodiscard]] double width(std::size_t cell) const { return widths_.at(cell); }
  [[nodiscard]] double h_max() const noexcept { return h_max_; }
  [[nodiscard]] bool is_uniform(double tol = 1e-12) const noexcept;

private:
  std::vector<double> nodes_;
  std::vector<double> widths_;
  double h_max_{0.0};
};

/// Node-wise comparison with absolute tolerance.
[[nodiscard]] bool approx_equal(const Mesh& a, const Mesh& b, double tol = 1e-12);

[[nodiscard]] Mesh uniform_mesh(std::size_t n_cells);

/// Splits every cell into `factor` equal subcells.
[[nodiscard]] Mesh refine(const Mesh& mesh, std::size_t factor);

/// True when every node of `coarse` is also a node of `fine` (within tol).
[[nodiscard]] bool is_nested(const Mesh& coarse, const Mesh& fine, double tol = 1e-12);

}  // namespace bbmb
