#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace knotfermion {

/// Exact Gaussian elimination over a field F, fed one equation at a time.
/// Rows are kept in echelon form with normalized pivots.
template <class F>
class IncrementalSolver {
 public:
  explicit IncrementalSolver(std::size_t unknowns) : n_(unknowns), pivot_row_(unknowns, -1) {}

  std::size_t unknowns() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  bool consistent() const { return consistent_; }
  bool full_rank() const { return rows_.size() == n_; }

  /// Adds sum_j coeffs[j] x_j = rhs. Returns false if the equation is inconsistent with earlier ones.
  bool add(std::vector<F> coeffs, F rhs) {
    if (coeffs.size() != n_) throw InvalidArgument("equation has the wrong number of unknowns");
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_zero(coeffs[j])) continue;
      int r = pivot_row_[j];
      if (r < 0) {
        F inv = F(1) / coeffs[j];
        for (std::size_t k = j; k < n_; ++k)
          if (!is_zero(coeffs[k])) coeffs[k] = coeffs[k] * inv;
        rhs = rhs * inv;
        pivot_row_[j] = static_cast<int>(rows_.size());
        rows_.push_back({j, std::move(coeffs), std::move(rhs)});
        return true;
      }
      const Row& p = rows_[static_cast<std::size_t>(r)];
      F f = coeffs[j];
      for (std::size_t k = j; k < n_; ++k)
        if (!is_zero(p.c[k])) coeffs[k] -= f * p.c[k];
      rhs -= f * p.rhs;
    }
    if (!is_zero(rhs)) consistent_ = false;
    return is_zero(rhs);
  }

  /// Solution with every free unknown set to zero; nullopt if inconsistent.
  std::optional<std::vector<F>> solution() const {
    if (!consistent_) return std::nullopt;
    std::vector<F> x(n_, F(0));
    for (std::size_t jj = n_; jj-- > 0;) {
      int r = pivot_row_[jj];
      if (r < 0) continue;
      const Row& p = rows_[static_cast<std::size_t>(r)];
      F v = p.rhs;
      for (std::size_t k = jj + 1; k < n_; ++k)
        if (!is_zero(p.c[k]) && !is_zero(x[k])) v -= p.c[k] * x[k];
      x[jj] = v;
    }
    return x;
  }

  /// Unknowns not determined by the equations so far.
  std::vector<std::size_t> free_unknowns() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
      if (pivot_row_[j] < 0) out.push_back(j);
    return out;
  }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<F> c;
    F rhs;
  };
  std::size_t n_;
  std::vector<int> pivot_row_;
  std::vector<Row> rows_;
  bool consistent_ = true;
};

/// Lagrange interpolation through (x_i, y_i) with distinct rational nodes; returns coefficients
/// of the interpolating polynomial in increasing degree.
inline std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  std::size_t n = xs.size();
  if (ys.size() != n) throw InvalidArgument("interpolation needs as many values as nodes");
  // Newton divided differences
  std::vector<Rational> d = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      Rational den = xs[i] - xs[i - j];
      if (den.is_zero()) throw InvalidArgument("interpolation nodes must be distinct");
      d[i] = (d[i] - d[i - 1]) / den;
      if (i == j) break;
    }
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t k = n; k-- > 0;) {
    // c = c * (x - xs[k]) + d[k]
    for (std::size_t i = n - 1; i > 0; --i) c[i] = c[i - 1] - c[i] * xs[k];
    c[0] = d[k] - c[0] * xs[k];
  }
  return c;
}

}  // namespace knotfermion
