#pragma once

#include "tropdiff/diff_poly.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/exponent_matrix.hpp"
#include "tropdiff/support_set.hpp"
#include "tropdiff/trop_value.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace tropdiff {

/// ϕ = ⊕_M a_M ⊙ ε_M with finite coefficients a_M.
///
/// Adding a term whose monomial is already present keeps the smaller
/// coefficient (a ⊕ b); an infinite coefficient is never stored.
class TropDiffPolynomial {
 public:
  using Terms = std::map<ExponentMatrix, std::uint64_t>;

  TropDiffPolynomial() = default;
  explicit TropDiffPolynomial(std::size_t n) : n_(n) {}

  std::size_t n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  void add_term(const ExponentMatrix& m, TropValue coeff) {
    if (coeff.is_infinite()) return;
    if (m.n() > n_) throw invalid_input_error("tropical monomial arity exceeds polynomial arity");
    auto key = m.widened(n_);
    auto it = terms_.find(key);
    if (it == terms_.end())
      terms_.emplace(std::move(key), coeff.value());
    else
      it->second = std::min(it->second, coeff.value());
  }

  std::uint32_t order() const noexcept {
    std::uint32_t r = 0;
    for (const auto& [m, a] : terms_) r = std::max(r, m.order());
    return r;
  }

  TropDiffPolynomial widened(std::size_t m) const {
    TropDiffPolynomial p(m);
    for (const auto& [k, a] : terms_) p.add_term(k, TropValue(a));
    return p;
  }

  bool operator==(const TropDiffPolynomial&) const = default;

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

/// ε_M(S) = Σ M_ij · Val_{S_i}(j).
inline TropValue eval_trop_monomial(const ExponentMatrix& m, std::span<const SupportSet> s) {
  if (m.n() > s.size())
    throw invalid_input_error("support tuple has " + std::to_string(s.size()) + " components, monomial needs " +
                              std::to_string(m.n()));
  TropValue sum = TropValue::zero();
  for (const auto& [v, e] : m.entries()) {
    sum = trop_mul(sum, trop_pow(val_at(s[v.var - 1], v.order), e));
    if (sum.is_infinite()) break;
  }
  return sum;
}

/// ϕ(S) = min_M {a_M + ε_M(S)}; ∞ for the empty polynomial.
inline TropValue eval_trop_poly(const TropDiffPolynomial& p, std::span<const SupportSet> s) {
  if (s.size() != p.n())
    throw invalid_input_error("expected a tuple of " + std::to_string(p.n()) + " supports, got " +
                              std::to_string(s.size()));
  TropValue best = TropValue::infinity();
  for (const auto& [m, a] : p.terms()) best = trop_add(best, trop_mul(TropValue(a), eval_trop_monomial(m, s)));
  return best;
}

struct TropSolutionCheck {
  bool is_solution = false;
  TropValue value;
  /// Monomials attaining the minimum; empty when the value is ∞.
  std::vector<ExponentMatrix> minimizers;
};

/// S solves ϕ iff ϕ(S) = ∞ or the minimum is attained by two distinct monomials.
inline TropSolutionCheck is_solution(const TropDiffPolynomial& p, std::span<const SupportSet> s) {
  TropSolutionCheck out;
  out.value = eval_trop_poly(p, s);
  if (out.value.is_infinite()) {
    out.is_solution = true;
    return out;
  }
  for (const auto& [m, a] : p.terms())
    if (trop_mul(TropValue(a), eval_trop_monomial(m, s)) == out.value) out.minimizers.push_back(m);
  out.is_solution = out.minimizers.size() >= 2;
  return out;
}

/// trop(P) = ⊕ val(ψ_M) ⊙ ε_M.
inline TropDiffPolynomial tropicalize(const DiffPolynomial& p) {
  TropDiffPolynomial out(p.n());
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_exact()) throw invalid_input_error("tropicalization requires exact coefficients");
    out.add_term(m, valuation(c));
  }
  return out;
}

/// `1 (*) x1' (+) 2 (*) x1^(3) (+) 3`; coefficient 0 is omitted on
/// non-constant monomials. The empty polynomial prints as `inf`.
inline std::string to_string(const TropDiffPolynomial& p) {
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, a] = *it;
    if (!out.empty()) out += " (+) ";
    if (m.is_constant())
      out += std::to_string(a);
    else if (a == 0)
      out += monomial_string(m, " (*) ");
    else
      out += std::to_string(a) + " (*) " + monomial_string(m, " (*) ");
  }
  return out.empty() ? "inf" : out;
}

}  // namespace tropdiff
