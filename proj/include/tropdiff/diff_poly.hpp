#pragma once

#include "tropdiff/errors.hpp"
#include "tropdiff/exponent_matrix.hpp"
#include "tropdiff/rational.hpp"
#include "tropdiff/series.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace tropdiff {

/// P = Σ_M ψ_M E_M: a differential polynomial in n unknowns whose
/// coefficients are power series in t.
///
/// Terms with equal exponent matrices are always merged and exactly-zero
/// coefficients dropped, so `terms()` is the canonical form.
class DiffPolynomial {
 public:
  using Terms = std::map<ExponentMatrix, TruncatedSeries>;

  DiffPolynomial() = default;
  explicit DiffPolynomial(std::size_t n) : n_(n) {}
  DiffPolynomial(std::size_t n, const Terms& terms) : n_(n) {
    for (const auto& [m, c] : terms) add_term(m, c);
  }

  static DiffPolynomial variable(std::size_t n, JetVar v) {
    DiffPolynomial p(n);
    p.add_term(ExponentMatrix::variable(n, v), TruncatedSeries::constant(1));
    return p;
  }
  static DiffPolynomial constant(std::size_t n, const TruncatedSeries& c) {
    DiffPolynomial p(n);
    p.add_term(ExponentMatrix(n), c);
    return p;
  }

  std::size_t n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Largest derivative order among the monomials (0 for constants).
  std::uint32_t order() const noexcept {
    std::uint32_t r = 0;
    for (const auto& [m, c] : terms_) r = std::max(r, m.order());
    return r;
  }

  bool has_exact_coefficients() const noexcept {
    for (const auto& [m, c] : terms_)
      if (!c.is_exact()) return false;
    return true;
  }

  void add_term(const ExponentMatrix& m, const TruncatedSeries& c) {
    if (m.n() > n_)
      throw invalid_input_error("monomial in " + std::to_string(m.n()) + " unknowns added to a polynomial in " +
                                std::to_string(n_));
    auto key = m.widened(n_);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (!c.is_exact_zero()) terms_.emplace(std::move(key), c);
      return;
    }
    it->second += c;
    if (it->second.is_exact_zero()) terms_.erase(it);
  }

  /// The same polynomial viewed in m >= n unknowns.
  DiffPolynomial widened(std::size_t m) const {
    DiffPolynomial p(m);
    for (const auto& [k, c] : terms_) p.add_term(k.widened(m), c);
    return p;
  }

  DiffPolynomial operator-() const {
    DiffPolynomial p(n_);
    for (const auto& [m, c] : terms_) p.add_term(m, -c);
    return p;
  }

  friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial p = a.widened(std::max(a.n_, b.n_));
    for (const auto& [m, c] : b.terms_) p.add_term(m, c);
    return p;
  }
  friend DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) { return a + (-b); }

  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial p(std::max(a.n_, b.n_));
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
    return p;
  }

  friend DiffPolynomial operator*(const TruncatedSeries& s, const DiffPolynomial& b) {
    return DiffPolynomial::constant(b.n_, s) * b;
  }

  bool operator==(const DiffPolynomial&) const = default;

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

/// Ordinary polynomial over Q in the jet variables x_ij; the monomials
/// reuse ExponentMatrix.
class OrdinaryPolynomial {
 public:
  using Terms = std::map<ExponentMatrix, Rational>;

  OrdinaryPolynomial() = default;
  explicit OrdinaryPolynomial(std::size_t n) : n_(n) {}

  std::size_t n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const ExponentMatrix& m, const Rational& c) {
    if (m.n() > n_) throw invalid_input_error("monomial arity exceeds polynomial arity");
    auto key = m.widened(n_);
    auto& slot = terms_[key];
    slot += c;
    if (slot == 0) terms_.erase(key);
  }

  /// Largest j with some x_ij present; nullopt for constants.
  std::optional<std::uint32_t> max_order() const {
    std::optional<std::uint32_t> r;
    for (const auto& [m, c] : terms_)
      if (!m.is_constant()) r = std::max(r.value_or(0), m.order());
    return r;
  }

  std::set<JetVar> variables() const {
    std::set<JetVar> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.entries()) out.insert(v);
    return out;
  }

  bool is_affine_linear() const noexcept {
    for (const auto& [m, c] : terms_)
      if (m.total_degree() > 1) return false;
    return true;
  }

  friend OrdinaryPolynomial operator+(const OrdinaryPolynomial& a, const OrdinaryPolynomial& b) {
    OrdinaryPolynomial p(std::max(a.n_, b.n_));
    for (const auto& [m, c] : a.terms_) p.add_term(m, c);
    for (const auto& [m, c] : b.terms_) p.add_term(m, c);
    return p;
  }
  friend OrdinaryPolynomial operator*(const OrdinaryPolynomial& a, const OrdinaryPolynomial& b) {
    OrdinaryPolynomial p(std::max(a.n_, b.n_));
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
    return p;
  }

  bool operator==(const OrdinaryPolynomial&) const = default;

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

/// The extended derivation: d(ψ E_M) = dψ·E_M + ψ·d(E_M), d(x_ij) = x_i(j+1).
inline DiffPolynomial derive_poly(const DiffPolynomial& p) {
  DiffPolynomial out(p.n());
  for (const auto& [m, c] : p.terms()) {
    auto dc = derive_series(c);
    if (!dc.is_exact_zero()) out.add_term(m, dc);
    for (const auto& [v, e] : m.entries()) {
      JetVar next{v.var, v.order + 1};
      auto lowered = m.with_exponent(v, e - 1);
      auto raised = lowered.with_exponent(next, lowered.exponent(next) + 1);
      out.add_term(raised, c * TruncatedSeries::constant(e));
    }
  }
  return out;
}

inline DiffPolynomial derive_poly(const DiffPolynomial& p, std::uint64_t times) {
  DiffPolynomial r = p;
  for (std::uint64_t i = 0; i < times; ++i) r = derive_poly(r);
  return r;
}

namespace detail {

inline TruncatedSeries power(const TruncatedSeries& s, std::uint32_t e) {
  TruncatedSeries r = TruncatedSeries::constant(1);
  for (std::uint32_t i = 0; i < e; ++i) r *= s;
  return r;
}

inline void check_arity(std::size_t n, std::size_t got) {
  if (n != got)
    throw invalid_input_error("expected a tuple of " + std::to_string(n) + " series, got " + std::to_string(got));
}

// derivatives[i][j] = d^j φ_i for j <= max_order.
inline std::vector<std::vector<TruncatedSeries>> derivative_table(std::span<const TruncatedSeries> phi,
                                                                  std::uint32_t max_order) {
  std::vector<std::vector<TruncatedSeries>> table(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    table[i].push_back(phi[i]);
    for (std::uint32_t j = 1; j <= max_order; ++j) table[i].push_back(derive_series(table[i].back()));
  }
  return table;
}

inline TruncatedSeries eval_monomial_with(const ExponentMatrix& m,
                                          const std::vector<std::vector<TruncatedSeries>>& table) {
  TruncatedSeries r = TruncatedSeries::constant(1);
  for (const auto& [v, e] : m.entries()) r *= power(table[v.var - 1][v.order], e);
  return r;
}

}  // namespace detail

/// E_M(φ) = Π (d^j φ_i)^{M_ij}.
inline TruncatedSeries eval_monomial(const ExponentMatrix& m, std::span<const TruncatedSeries> phi) {
  detail::check_arity(m.n(), phi.size());
  return detail::eval_monomial_with(m, detail::derivative_table(phi, m.order()));
}

/// P(φ) = Σ ψ_M E_M(φ).
inline TruncatedSeries eval_poly(const DiffPolynomial& p, std::span<const TruncatedSeries> phi) {
  detail::check_arity(p.n(), phi.size());
  auto table = detail::derivative_table(phi, p.order());
  TruncatedSeries sum;
  for (const auto& [m, c] : p.terms()) sum += c * detail::eval_monomial_with(m, table);
  return sum;
}

/// P|_{t=0}: a polynomial in the x_ij over Q.
inline OrdinaryPolynomial eval_at_zero(const DiffPolynomial& p) {
  OrdinaryPolynomial out(p.n());
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_exact()) throw invalid_input_error("evaluation at t=0 requires exact coefficients");
    out.add_term(m, c.coefficient(0));
  }
  return out;
}

/// F_k = (d^k f)|_{t=0} for k = 0..m, with N_m the largest derivative index
/// occurring in any of them.
struct JetPolys {
  std::vector<OrdinaryPolynomial> polys;
  std::uint32_t max_order = 0;
};

inline JetPolys jet_polys(const DiffPolynomial& f, std::uint64_t m) {
  if (!f.has_exact_coefficients()) throw invalid_input_error("jet polynomials require exact coefficients");
  JetPolys out;
  DiffPolynomial g = f;
  for (std::uint64_t k = 0; k <= m; ++k) {
    out.polys.push_back(eval_at_zero(g));
    if (auto r = out.polys.back().max_order()) out.max_order = std::max(out.max_order, *r);
    if (k < m) g = derive_poly(g);
  }
  return out;
}

/// F(a) with x_ij ↦ a_i[j].
inline Rational eval_ordinary(const OrdinaryPolynomial& f, std::span<const CoeffSequence> a) {
  if (a.size() != f.n())
    throw invalid_input_error("expected " + std::to_string(f.n()) + " coefficient sequences, got " +
                              std::to_string(a.size()));
  Rational sum = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational term = c;
    for (const auto& [v, e] : m.entries()) {
      Rational x = a[v.var - 1].at(v.order);
      for (std::uint32_t k = 0; k < e; ++k) term *= x;
      if (term == 0) break;
    }
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Text forms.

namespace detail {

// Signed single term c*t^k split into (negative, magnitude text); the
// magnitude is empty for a unit constant multiplier.
inline std::pair<bool, std::string> series_term(const Rational& c, std::uint64_t k, bool unit_as_empty) {
  bool neg = c < 0;
  Rational mag = neg ? Rational(-c) : c;
  std::string tpart = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
  std::string s;
  if (mag != 1 || (tpart.empty() && !unit_as_empty)) s = mag.str();
  if (!tpart.empty()) s += s.empty() ? tpart : "*" + tpart;
  return {neg, s};
}

inline void append_signed(std::string& out, bool neg, const std::string& body) {
  if (out.empty())
    out = (neg ? "-" : "") + body;
  else
    out += (neg ? " - " : " + ") + body;
}

inline std::string series_body(const TruncatedSeries& s) {
  std::string out;
  for (const auto& [k, c] : s.coefficients()) {
    auto [neg, body] = series_term(c, k, false);
    append_signed(out, neg, body);
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// `2 + 1/6*t^3 ; O(t^8)`.
inline std::string to_string(const TruncatedSeries& s) {
  auto out = detail::series_body(s);
  if (s.precision()) out += " ; O(t^" + std::to_string(*s.precision()) + ")";
  return out;
}

/// `x1'' - t`; terms ordered from the highest monomial down.
inline std::string to_string(const DiffPolynomial& p) {
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (m.is_constant() && c.is_exact()) {
      for (const auto& [k, v] : c.coefficients()) {
        auto [neg, body] = detail::series_term(v, k, false);
        detail::append_signed(out, neg, body);
      }
      continue;
    }
    bool neg = false;
    std::string coef;
    if (c.coefficients().size() == 1 && c.is_exact()) {
      const auto& [k, v] = *c.coefficients().begin();
      std::tie(neg, coef) = detail::series_term(v, k, !m.is_constant());
    } else {
      coef = "(" + to_string(c) + ")";
    }
    std::string body = coef;
    if (!m.is_constant()) body += (coef.empty() ? "" : "*") + monomial_string(m);
    detail::append_signed(out, neg, body);
  }
  return out.empty() ? "0" : out;
}

/// Jet variables printed as `x1_2` for x_12.
inline std::string to_string(const OrdinaryPolynomial& f) {
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    std::string body;
    for (const auto& [v, e] : m.entries()) {
      if (!body.empty()) body += "*";
      body += "x" + std::to_string(v.var) + "_" + std::to_string(v.order);
      if (e > 1) body += "^" + std::to_string(e);
    }
    if (body.empty())
      body = mag.str();
    else if (mag != 1)
      body = mag.str() + "*" + body;
    detail::append_signed(out, neg, body);
  }
  return out.empty() ? "0" : out;
}

}  // namespace tropdiff
