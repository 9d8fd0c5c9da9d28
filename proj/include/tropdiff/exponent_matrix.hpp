#pragma once

#include "tropdiff/errors.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tropdiff {

/// The jet variable x_ij: the `order`-th derivative of the unknown x_var.
/// `var` is 1-based, `order` 0-based.
struct JetVar {
  std::uint32_t var = 1;
  std::uint32_t order = 0;

  auto operator<=>(const JetVar&) const = default;
};

/// n × (r+1) matrix of nonnegative exponents, M_ij being the power of x_ij.
///
/// Trailing all-zero columns are trimmed, so the column count is r+1 with
/// r the largest derivative order present (r = 0 for the constant monomial).
/// The same type serves as the monomial of ordinary polynomials in the x_ij.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;

  /// The constant monomial in n unknowns.
  explicit ExponentMatrix(std::size_t n) : n_(n), cols_(1), data_(n, 0) {}

  explicit ExponentMatrix(const std::vector<std::vector<std::uint32_t>>& rows) : n_(rows.size()) {
    std::size_t width = 1;
    for (const auto& row : rows) width = std::max(width, row.size());
    cols_ = width;
    data_.assign(n_ * cols_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) data_[i * cols_ + j] = rows[i][j];
    trim();
  }

  /// x_ij^e in n unknowns.
  static ExponentMatrix variable(std::size_t n, JetVar v, std::uint32_t e = 1) {
    return ExponentMatrix(n).with_exponent(v, e);
  }

  std::size_t n() const noexcept { return n_; }
  /// r: the largest derivative order with a nonzero exponent.
  std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(cols_ - 1); }

  std::uint32_t exponent(JetVar v) const noexcept {
    if (v.var == 0 || v.var > n_ || v.order >= cols_) return 0;
    return data_[(v.var - 1) * cols_ + v.order];
  }

  bool is_constant() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](auto e) { return e == 0; });
  }

  std::uint64_t total_degree() const noexcept {
    std::uint64_t d = 0;
    for (auto e : data_) d += e;
    return d;
  }

  /// Nonzero entries in (var, order) order.
  std::vector<std::pair<JetVar, std::uint32_t>> entries() const {
    std::vector<std::pair<JetVar, std::uint32_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (auto e = data_[i * cols_ + j])
          out.push_back({JetVar{static_cast<std::uint32_t>(i + 1), static_cast<std::uint32_t>(j)}, e});
    return out;
  }

  std::vector<std::vector<std::uint32_t>> rows() const {
    std::vector<std::vector<std::uint32_t>> out(n_, std::vector<std::uint32_t>(cols_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = data_[i * cols_ + j];
    return out;
  }

  ExponentMatrix with_exponent(JetVar v, std::uint32_t e) const {
    if (v.var == 0 || v.var > n_)
      throw invalid_input_error("variable x" + std::to_string(v.var) + " out of range for " +
                                std::to_string(n_) + " unknowns");
    auto r = rows();
    if (r[v.var - 1].size() <= v.order) r[v.var - 1].resize(v.order + 1, 0);
    r[v.var - 1][v.order] = e;
    return ExponentMatrix(r);
  }

  /// Monomial product (entrywise sum). Arity is the larger of the two.
  ExponentMatrix operator*(const ExponentMatrix& o) const {
    auto a = widened(std::max(n_, o.n_)).rows();
    auto b = o.widened(std::max(n_, o.n_)).rows();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() < b[i].size()) a[i].resize(b[i].size(), 0);
      for (std::size_t j = 0; j < b[i].size(); ++j) a[i][j] += b[i][j];
    }
    return ExponentMatrix(a);
  }

  /// Same monomial viewed in m >= n unknowns.
  ExponentMatrix widened(std::size_t m) const {
    if (m < n_) throw invalid_input_error("cannot narrow an exponent matrix");
    if (m == n_) return *this;
    auto r = rows();
    r.resize(m, std::vector<std::uint32_t>(cols_, 0));
    return ExponentMatrix(r);
  }

  bool operator==(const ExponentMatrix&) const = default;
  auto operator<=>(const ExponentMatrix&) const = default;

 private:
  void trim() {
    while (cols_ > 1) {
      bool zero = true;
      for (std::size_t i = 0; i < n_ && zero; ++i) zero = data_[i * cols_ + cols_ - 1] == 0;
      if (!zero) break;
      std::vector<std::uint32_t> next(n_ * (cols_ - 1));
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j + 1 < cols_; ++j) next[i * (cols_ - 1) + j] = data_[i * cols_ + j];
      data_ = std::move(next);
      --cols_;
    }
  }

  // Field order matters for <=>: arity, then width, then entries.
  std::size_t n_ = 0;
  std::size_t cols_ = 1;
  std::vector<std::uint32_t> data_;
};

/// `x1`, `x1'`, `x1''`, `x1^(3)`, ...
inline std::string jet_var_name(JetVar v) {
  std::string s = "x" + std::to_string(v.var);
  if (v.order <= 2) return s + std::string(v.order, '\'');
  return s + "^(" + std::to_string(v.order) + ")";
}

/// Factors joined by `sep`, e.g. `x1*x1'^2`; "1" for the constant monomial.
inline std::string monomial_string(const ExponentMatrix& m, const std::string& sep = "*") {
  std::string out;
  for (const auto& [v, e] : m.entries()) {
    if (!out.empty()) out += sep;
    out += jet_var_name(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

}  // namespace tropdiff
