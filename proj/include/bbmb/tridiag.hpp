#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bbmb {

/// Square tridiagonal matrix stored by bands.
///
/// Row i holds lower[i-1] (column i-1), diag[i] and upper[i] (column i+1).
struct TriDiag {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  TriDiag() = default;
  explicit TriDiag(std::size_t n) : lower(n > 0 ? n - 1 : 0), diag(n), upper(n > 0 ? n - 1 : 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

  /// Entry (i, j); zero outside the three bands.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;
  /// Adds v to entry (i, j); |i - j| must be at most 1.
  void add(std::size_t i, std::size_t j, double v);

  [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
  [[nodiscard]] std::vector<std::vector<double>> to_dense() const;
  [[nodiscard]] TriDiag transposed() const;
  /// Max absolute row sum.
  [[nodiscard]] double norm_inf() const;

  TriDiag& operator+=(const TriDiag& other);
  TriDiag& operator*=(double s);
};

[[nodiscard]] TriDiag operator+(TriDiag a, const TriDiag& b);
[[nodiscard]] TriDiag operator*(double s, TriDiag a);

/// Raised when tridiagonal elimination meets a (near-)zero pivot.
class EliminationBreakdown : public std::runtime_error {
public:
  EliminationBreakdown(std::size_t row, double pivot);
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] double pivot() const noexcept { return pivot_; }

private:
  std::size_t row_;
  double pivot_;
};

/// Solves m x = rhs by the Thomas algorithm, without pivoting.
///
/// A pivot whose magnitude falls below 1e-14 times the size of its row is
/// reported as EliminationBreakdown rather than silently accepted.
[[nodiscard]] std::vector<double> thomas_solve(const TriDiag& m, std::span<const double> rhs);

}  // namespace bbmb
