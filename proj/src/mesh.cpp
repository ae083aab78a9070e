#include "bbmb/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bbmb {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw std::invalid_argument("Mesh: need at least two nodes");
  }
  if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
    throw std::invalid_argument("Mesh: nodes must start at 0 and end at 1");
  }
  widths_.reserve(nodes_.size() - 1);
  for (std::size_t j = 1; j < nodes_.size(); ++j) {
    const double hj = nodes_[j] - nodes_[j - 1];
    if (!(hj > 0.0)) {
      throw std::invalid_argument("Mesh: nodes not strictly increasing at index " +
                                  std::to_string(j));
    }
    widths_.push_back(hj);
  }
  h_max_ = *std::max_element(widths_.begin(), widths_.end());
}

bool Mesh::is_uniform(double tol) const noexcept {
  const double h = 1.0 / static_cast<double>(num_cells());
  return std::all_of(widths_.begin(), widths_.end(),
                     [&](double w) { return std::abs(w - h) <= tol; });
}

bool approx_equal(const Mesh& a, const Mesh& b, double tol) {
  if (a.num_nodes() != b.num_nodes()) return false;
  for (std::size_t j = 0; j < a.num_nodes(); ++j) {
    if (std::abs(a.nodes()[j] - b.nodes()[j]) > tol) return false;
  }
  return true;
}

Mesh uniform_mesh(std::size_t n_cells) {
  if (n_cells == 0) {
    throw std::invalid_argument("uniform_mesh: n_cells must be positive");
  }
  std::vector<double> nodes(n_cells + 1);
  const auto n = static_cast<double>(n_cells);
  for (std::size_t j = 0; j <= n_cells; ++j) {
    nodes[j] = static_cast<double>(j) / n;
  }
  nodes.back() = 1.0;
  return Mesh(std::move(nodes));
}

Mesh refine(const Mesh& mesh, std::size_t factor) {
  if (factor == 0) {
    throw std::invalid_argument("refine: factor must be positive");
  }
  const auto f = static_cast<double>(factor);
  std::vector<double> nodes;
  nodes.reserve(mesh.num_cells() * factor + 1);
  nodes.push_back(0.0);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double a = mesh.nodes()[c];
    const double b = mesh.nodes()[c + 1];
    for (std::size_t s = 1; s < factor; ++s) {
      const double t = static_cast<double>(s) / f;
      nodes.push_back((1.0 - t) * a + t * b);
    }
    // Original nodes are copied verbatim so they stay bit-identical.
    nodes.push_back(b);
  }
  return Mesh(std::move(nodes));
}

bool is_nested(const Mesh& coarse, const Mesh& fine, double tol) {
  std::size_t k = 0;
  for (double x : coarse.nodes()) {
    while (k < fine.num_nodes() && fine.nodes()[k] < x - tol) ++k;
    if (k == fine.num_nodes() || std::abs(fine.nodes()[k] - x) > tol) return false;
  }
  return true;
}

}  // namespace bbmb
