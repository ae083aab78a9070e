#include "bbmb/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bbmb {

double TriDiag::at(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("TriDiag::at");
  if (i == j) return diag[i];
  if (j + 1 == i) return lower[j];
  if (i + 1 == j) return upper[i];
  return 0.0;
}

void TriDiag::add(std::size_t i, std::size_t j, double v) {
  if (i >= size() || j >= size()) throw std::out_of_range("TriDiag::add");
  if (i == j) {
    diag[i] += v;
  } else if (j + 1 == i) {
    lower[j] += v;
  } else if (i + 1 == j) {
    upper[i] += v;
  } else {
    throw std::out_of_range("TriDiag::add: entry outside bands");
  }
}

std::vector<double> TriDiag::apply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw std::invalid_argument("TriDiag::apply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += lower[i - 1] * x[i - 1];
    if (i + 1 < n) s += upper[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::vector<std::vector<double>> TriDiag::to_dense() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = diag[i];
    if (i > 0) d[i][i - 1] = lower[i - 1];
    if (i + 1 < n) d[i][i + 1] = upper[i];
  }
  return d;
}

TriDiag TriDiag::transposed() const {
  TriDiag t = *this;
  std::swap(t.lower, t.upper);
  return t;
}

double TriDiag::norm_inf() const {
  double best = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = std::abs(diag[i]);
    if (i > 0) s += std::abs(lower[i - 1]);
    if (i + 1 < n) s += std::abs(upper[i]);
    best = std::max(best, s);
  }
  return best;
}

TriDiag& TriDiag::operator+=(const TriDiag& other) {
  if (other.size() != size()) throw std::invalid_argument("TriDiag: size mismatch");
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += other.diag[i];
  for (std::size_t i = 0; i < lower.size(); ++i) {
    lower[i] += other.lower[i];
    upper[i] += other.upper[i];
  }
  return *this;
}

TriDiag& TriDiag::operator*=(double s) {
  for (double& v : lower) v *= s;
  for (double& v : diag) v *= s;
  for (double& v : upper) v *= s;
  return *this;
}

TriDiag operator+(TriDiag a, const TriDiag& b) { return a += b; }
TriDiag operator*(double s, TriDiag a) { return a *= s; }

EliminationBreakdown::EliminationBreakdown(std::size_t row, double pivot)
    : std::runtime_error("tridiagonal elimination breakdown at row " + std::to_string(row) +
                         " (pivot " + std::to_string(pivot) + ")"),
      row_(row),
      pivot_(pivot) {}

std::vector<double> thomas_solve(const TriDiag& m, std::span<const double> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw std::invalid_argument("thomas_solve: size mismatch");
  if (n == 0) return {};

  auto row_scale = [&](std::size_t i) {
    double s = std::abs(m.diag[i]);
    if (i > 0) s += std::abs(m.lower[i - 1]);
    if (i + 1 < n) s += std::abs(m.upper[i]);
    return s;
  };
  constexpr double kPivotTol = 1e-14;

  std::vector<double> c(n, 0.0);  // modified super-diagonal
  std::vector<double> x(rhs.begin(), rhs.end());

  double pivot = m.diag[0];
  if (std::abs(pivot) <= kPivotTol * row_scale(0)) throw EliminationBreakdown(0, pivot);
  if (n > 1) c[0] = m.upper[0] / pivot;
  x[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = m.diag[i] - m.lower[i - 1] * c[i - 1];
    if (std::abs(pivot) <= kPivotTol * row_scale(i)) throw EliminationBreakdown(i, pivot);
    if (i + 1 < n) c[i] = m.upper[i] / pivot;
    x[i] = (x[i] - m.lower[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= c[i] * x[i + 1];
  }
  return x;
}

}  // namespace bbmb
