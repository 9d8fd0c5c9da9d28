#pragma once

#include "tropdiff/errors.hpp"
#include "tropdiff/rational.hpp"
#include "tropdiff/support_set.hpp"
#include "tropdiff/trop_value.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropdiff {

/// Formal power series in t over Q with explicit precision.
///
/// Either exact (a polynomial: every coefficient not stored is zero) or
/// known modulo t^N (coefficients at exponents >= N are unknown). Stored
/// coefficients are never zero and, for truncated series, always below N.
class TruncatedSeries {
 public:
  using Coefficients = std::map<std::uint64_t, Rational>;

  /// The exact zero series.
  TruncatedSeries() = default;

  static TruncatedSeries exact(Coefficients coeffs) {
    return TruncatedSeries(std::move(coeffs), std::nullopt);
  }
  static TruncatedSeries truncated(Coefficients coeffs, std::uint64_t precision) {
    return TruncatedSeries(std::move(coeffs), precision);
  }
  static TruncatedSeries constant(const Rational& c) { return monomial(c, 0); }
  static TruncatedSeries monomial(const Rational& c, std::uint64_t k) {
    return exact(Coefficients{{k, c}});
  }

  bool is_exact() const noexcept { return !precision_; }
  /// nullopt for exact series, N for O(t^N).
  const std::optional<std::uint64_t>& precision() const noexcept { return precision_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }

  /// Coefficient of t^k; throws precision_error when k is beyond the precision.
  Rational coefficient(std::uint64_t k) const {
    if (precision_ && k >= *precision_)
      throw precision_error("coefficient of t^" + std::to_string(k) + " is unknown at precision O(t^" +
                            std::to_string(*precision_) + ")");
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  /// True iff no coefficient is stored (the exact zero, or O(t^N) with no
  /// known nonzero term).
  bool has_no_terms() const noexcept { return coeffs_.empty(); }
  bool is_exact_zero() const noexcept { return is_exact() && coeffs_.empty(); }

  /// Lowers the precision to O(t^n) (no-op if already at most n).
  TruncatedSeries truncated_to(std::uint64_t n) const {
    if (precision_ && *precision_ <= n) return *this;
    return TruncatedSeries(coeffs_, n);
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& [k, c] : r.coeffs_) c = -c;
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    Coefficients out = a.coeffs_;
    for (const auto& [k, c] : b.coeffs_) out[k] += c;
    return TruncatedSeries(std::move(out), min_precision(a.precision_, b.precision_));
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    auto prec = min_precision(a.precision_, b.precision_);
    Coefficients out;
    for (const auto& [i, x] : a.coeffs_) {
      for (const auto& [j, y] : b.coeffs_) {
        if (prec && i + j >= *prec) break;
        out[i + j] += x * y;
      }
    }
    return TruncatedSeries(std::move(out), prec);
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  bool operator==(const TruncatedSeries&) const = default;

 private:
  TruncatedSeries(Coefficients coeffs, std::optional<std::uint64_t> precision)
      : coeffs_(std::move(coeffs)), precision_(precision) {
    std::erase_if(coeffs_, [&](const auto& kv) {
      return kv.second == 0 || (precision_ && kv.first >= *precision_);
    });
  }

  static std::optional<std::uint64_t> min_precision(std::optional<std::uint64_t> a,
                                                    std::optional<std::uint64_t> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }

  Coefficients coeffs_;
  std::optional<std::uint64_t> precision_;
};

/// The support of a series. For a truncated series only exponents below the
/// precision are known; `window` then holds that precision.
struct SeriesSupport {
  SupportSet set;
  std::optional<std::uint64_t> window;

  bool window_limited() const noexcept { return window.has_value(); }
};

inline SeriesSupport support(const TruncatedSeries& phi) {
  std::vector<std::uint64_t> exps;
  exps.reserve(phi.coefficients().size());
  for (const auto& [k, c] : phi.coefficients()) exps.push_back(k);
  return {SupportSet(std::move(exps)), phi.precision()};
}

/// min Supp(φ); ∞ for the exact zero series. A truncated series with no
/// known nonzero coefficient has unknown valuation.
inline TropValue valuation(const TruncatedSeries& phi) {
  if (!phi.has_no_terms()) return TropValue(phi.coefficients().begin()->first);
  if (phi.is_exact()) return TropValue::infinity();
  throw precision_error("valuation unknown: no nonzero coefficient below O(t^" +
                        std::to_string(*phi.precision()) + ")");
}

/// dφ = Σ j a_j t^{j-1}. O(t^N) becomes O(t^{N-1}).
inline TruncatedSeries derive_series(const TruncatedSeries& phi) {
  TruncatedSeries::Coefficients out;
  for (const auto& [k, c] : phi.coefficients())
    if (k > 0) out.emplace(k - 1, c * k);
  if (phi.is_exact()) return TruncatedSeries::exact(std::move(out));
  if (*phi.precision() == 0) throw precision_error("cannot differentiate a series known only modulo O(t^0)");
  return TruncatedSeries::truncated(std::move(out), *phi.precision() - 1);
}

inline TruncatedSeries derive_series(const TruncatedSeries& phi, std::uint64_t times) {
  TruncatedSeries r = phi;
  for (std::uint64_t i = 0; i < times; ++i) r = derive_series(r);
  return r;
}

/// Finitely supported sequence (a_j)_{j>=0} of rationals.
class CoeffSequence {
 public:
  using Entries = std::map<std::uint64_t, Rational>;

  CoeffSequence() = default;
  explicit CoeffSequence(Entries entries) : entries_(std::move(entries)) {
    std::erase_if(entries_, [](const auto& kv) { return kv.second == 0; });
  }
  /// Dense form (a_0, a_1, ...).
  static CoeffSequence from_dense(const std::vector<Rational>& a) {
    Entries e;
    for (std::size_t j = 0; j < a.size(); ++j) e.emplace(j, a[j]);
    return CoeffSequence(std::move(e));
  }

  const Entries& entries() const noexcept { return entries_; }

  Rational at(std::uint64_t j) const {
    auto it = entries_.find(j);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  /// {j : a_j ≠ 0}.
  SupportSet nonzero_indices() const {
    std::vector<std::uint64_t> idx;
    for (const auto& [j, a] : entries_) idx.push_back(j);
    return SupportSet(std::move(idx));
  }

  bool operator==(const CoeffSequence&) const = default;

 private:
  Entries entries_;
};

/// Ψ(a) = Σ a_j t^j / j!.
inline TruncatedSeries psi(const CoeffSequence& a) {
  TruncatedSeries::Coefficients out;
  for (const auto& [j, v] : a.entries()) out.emplace(j, v / factorial(j));
  return TruncatedSeries::exact(std::move(out));
}

/// a_j = j! · [t^j]φ, i.e. (d^j φ)(0).
inline CoeffSequence psi_inverse(const TruncatedSeries& phi) {
  if (!phi.is_exact()) throw invalid_input_error("psi_inverse requires an exact series");
  CoeffSequence::Entries out;
  for (const auto& [k, c] : phi.coefficients()) out.emplace(k, c * factorial(k));
  return CoeffSequence(std::move(out));
}

}  // namespace tropdiff
