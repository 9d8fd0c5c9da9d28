#pragma once

#include "tropdiff/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace tropdiff {

/// Affine parametrization of the solution set of A x = b:
/// x_k = offset[k] + Σ_f basis[k][f] · p_f over the free parameters p.
struct AffineSolution {
  std::vector<Rational> offset;
  std::vector<std::vector<Rational>> basis;  // unknowns × free parameters
  std::vector<std::size_t> free_columns;

  /// x_k is zero on the whole solution set.
  bool identically_zero(std::size_t k) const {
    if (offset[k] != 0) return false;
    for (const auto& c : basis[k])
      if (c != 0) return false;
    return true;
  }

  std::vector<Rational> point(const std::vector<Rational>& params) const {
    std::vector<Rational> x = offset;
    for (std::size_t k = 0; k < x.size(); ++k)
      for (std::size_t f = 0; f < params.size(); ++f) x[k] += basis[k][f] * params[f];
    return x;
  }
};

/// Gauss-Jordan elimination over Q. Returns nullopt when the system is
/// inconsistent.
inline std::optional<AffineSolution> solve_affine(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                                  std::size_t unknowns) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < unknowns; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;

  AffineSolution sol;
  std::vector<bool> is_pivot(unknowns, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t c = 0; c < unknowns; ++c)
    if (!is_pivot[c]) sol.free_columns.push_back(c);

  sol.offset.assign(unknowns, 0);
  sol.basis.assign(unknowns, std::vector<Rational>(sol.free_columns.size(), 0));
  for (std::size_t f = 0; f < sol.free_columns.size(); ++f) sol.basis[sol.free_columns[f]][f] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    auto c = pivot_col[i];
    sol.offset[c] = b[i];
    for (std::size_t f = 0; f < sol.free_columns.size(); ++f) sol.basis[c][f] = -a[i][sol.free_columns[f]];
  }
  return sol;
}

}  // namespace tropdiff
