#include "bbmb/fem1d.hpp"

#include <algorithm>
#include <stdexcept>

#include "bbmb/quadrature.hpp"

namespace bbmb {

namespace {

std::size_t cell_of(const Mesh& mesh, double x) {
  if (x < 0.0 || x > 1.0) throw std::out_of_range("point outside [0, 1]");
  const auto nodes = mesh.nodes();
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  auto idx = static_cast<std::size_t>(it - nodes.begin());
  if (idx == 0) idx = 1;
  if (idx > mesh.num_cells()) idx = mesh.num_cells();
  return idx - 1;
}

}  // namespace

NodalField::NodalField(std::shared_ptr<const Mesh> mesh)
    : mesh_(std::move(mesh)), values_(mesh_ ? mesh_->num_nodes() : 0, 0.0) {
  if (!mesh_) throw std::invalid_argument("NodalField: null mesh");
}

NodalField::NodalField(std::shared_ptr<const Mesh> mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (!mesh_) throw std::invalid_argument("NodalField: null mesh");
  if (values_.size() != mesh_->num_nodes()) {
    throw std::invalid_argument("NodalField: value count does not match node count");
  }
}

double NodalField::left_slope() const {
  return (values_[1] - values_[0]) / mesh_->width(0);
}

double NodalField::right_slope() const {
  const std::size_t n = values_.size();
  return (values_[n - 1] - values_[n - 2]) / mesh_->width(n - 2);
}

double NodalField::evaluate(double x) const {
  const std::size_t c = cell_of(*mesh_, x);
  const double a = mesh_->nodes()[c];
  const double t = (x - a) / mesh_->width(c);
  return (1.0 - t) * values_[c] + t * values_[c + 1];
}

double NodalField::derivative(double x) const {
  const std::size_t c = cell_of(*mesh_, x);
  return (values_[c + 1] - values_[c]) / mesh_->width(c);
}

bool NodalField::same_mesh(const NodalField& other) const noexcept {
  return mesh_ == other.mesh_ || approx_equal(*mesh_, *other.mesh_);
}

NodalField operator-(const NodalField& a, const NodalField& b) {
  if (!a.same_mesh(b)) throw std::invalid_argument("NodalField: mesh mismatch");
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] - b[j];
  return NodalField(a.mesh_ptr(), std::move(v));
}

NodalField operator*(double s, const NodalField& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= s;
  return NodalField(a.mesh_ptr(), std::move(v));
}

NodalField interpolate(std::shared_ptr<const Mesh> mesh, const ScalarFunction& f) {
  std::vector<double> v(mesh->num_nodes());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(mesh->nodes()[j]);
  return NodalField(std::move(mesh), std::move(v));
}

NodalField prolong(const NodalField& coarse, std::shared_ptr<const Mesh> fine) {
  if (!is_nested(coarse.mesh(), *fine)) {
    throw std::invalid_argument("prolong: meshes are not nested");
  }
  std::vector<double> v(fine->num_nodes());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = coarse.evaluate(fine->nodes()[j]);
  return NodalField(std::move(fine), std::move(v));
}

TriDiag assemble_mass(const Mesh& mesh) {
  TriDiag m(mesh.num_nodes());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double h = mesh.width(c);
    m.diag[c] += h / 3.0;
    m.diag[c + 1] += h / 3.0;
    m.upper[c] += h / 6.0;
    m.lower[c] += h / 6.0;
  }
  return m;
}

TriDiag assemble_stiffness(const Mesh& mesh) {
  TriDiag a(mesh.num_nodes());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double inv_h = 1.0 / mesh.width(c);
    a.diag[c] += inv_h;
    a.diag[c + 1] += inv_h;
    a.upper[c] -= inv_h;
    a.lower[c] -= inv_h;
  }
  return a;
}

TriDiag assemble_convection(const Mesh& mesh) {
  // Per cell: (phi_j', phi_i) = +-1/h * h/2, independent of h.
  TriDiag b(mesh.num_nodes());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    b.diag[c] -= 0.5;
    b.upper[c] += 0.5;
    b.lower[c] -= 0.5;
    b.diag[c + 1] += 0.5;
  }
  return b;
}

std::vector<double> nonlinear_convection(const NodalField& w) {
  const std::size_t n_cells = w.mesh().num_cells();
  std::vector<double> out(w.size(), 0.0);
  for (std::size_t c = 0; c < n_cells; ++c) {
    const double wl = w[c];
    const double wr = w[c + 1];
    // w_x = (wr - wl)/h cancels the h in (w, phi_i) on the cell.
    const double jump = wr - wl;
    out[c] += jump * (2.0 * wl + wr) / 6.0;
    out[c + 1] += jump * (wl + 2.0 * wr) / 6.0;
  }
  return out;
}

TriDiag nonlinear_convection_jacobian(const NodalField& w) {
  const std::size_t n_cells = w.mesh().num_cells();
  TriDiag j(w.size());
  for (std::size_t c = 0; c < n_cells; ++c) {
    const double wl = w[c];
    const double wr = w[c + 1];
    j.diag[c] += (wr - 4.0 * wl) / 6.0;
    j.upper[c] += (wl + 2.0 * wr) / 6.0;
    j.lower[c] += -(2.0 * wl + wr) / 6.0;
    j.diag[c + 1] += (4.0 * wr - wl) / 6.0;
  }
  return j;
}

NodalField discrete_laplacian_apply(const NodalField& v, const TriDiag& mass,
                                    const TriDiag& stiffness) {
  if (mass.size() != v.size() || stiffness.size() != v.size()) {
    throw std::invalid_argument("discrete_laplacian_apply: operator size mismatch");
  }
  std::vector<double> rhs = stiffness.apply(v.values());
  rhs.front() += v.left_slope();
  rhs.back() -= v.right_slope();
  for (double& r : rhs) r = -r;
  return NodalField(v.mesh_ptr(), thomas_solve(mass, rhs));
}

NodalField auxiliary_projection(const ScalarFunction& f, const ScalarFunction& df,
                                std::shared_ptr<const Mesh> mesh, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("auxiliary_projection: lambda must be positive");
  const Mesh& m = *mesh;
  TriDiag system = assemble_stiffness(m) + lambda * assemble_mass(m);

  const QuadratureRule rule = gauss_legendre(4);
  std::vector<double> load(m.num_nodes(), 0.0);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const double a = m.nodes()[c];
    const double h = m.width(c);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double t = rule.points[q];
      const double x = a + t * h;
      const double wq = rule.weights[q] * h;
      const double fx = f(x);
      const double dfx = df(x);
      // phi_left = 1 - t, phi_right = t; slopes -1/h, +1/h.
      load[c] += wq * (dfx * (-1.0 / h) + lambda * fx * (1.0 - t));
      load[c + 1] += wq * (dfx * (1.0 / h) + lambda * fx * t);
    }
  }
  return NodalField(std::move(mesh), thomas_solve(system, load));
}

}  // namespace bbmb
