#pragma once

#include "tropdiff/errors.hpp"
#include "tropdiff/rational.hpp"
#include "tropdiff/series.hpp"
#include "tropdiff/support_set.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tropdiff {

/// Polynomial over Q in the family parameters; monomial keys hold one
/// exponent per parameter.
using ParamPolynomial = std::map<std::vector<std::uint32_t>, Rational>;

/// Σ_k c_k(params) t^k with polynomial coefficients in the parameters.
using SeriesTemplate = std::map<std::uint64_t, ParamPolynomial>;

/// A parametric description of a set of series tuples, e.g.
/// {c1 + c2 t + t^3/6 : c1, c2}.
struct SolutionFamily {
  std::vector<std::string> params;
  std::vector<SeriesTemplate> components;

  std::size_t n() const noexcept { return components.size(); }

  std::vector<TruncatedSeries> evaluate(const std::vector<Rational>& values) const {
    if (values.size() != params.size())
      throw invalid_input_error("family has " + std::to_string(params.size()) + " parameters, got " +
                                std::to_string(values.size()) + " values");
    std::vector<TruncatedSeries> out;
    for (const auto& comp : components) {
      TruncatedSeries::Coefficients coeffs;
      for (const auto& [k, poly] : comp) {
        Rational c = 0;
        for (const auto& [exps, q] : poly) {
          Rational term = q;
          for (std::size_t p = 0; p < exps.size() && term != 0; ++p)
            for (std::uint32_t e = 0; e < exps[p]; ++e) term *= values[p];
          c += term;
        }
        coeffs.emplace(k, c);
      }
      out.push_back(TruncatedSeries::exact(std::move(coeffs)));
    }
    return out;
  }
};

/// How free parameters are instantiated. Every parameter is either set to
/// zero or sampled at `values.size()` distinct nonzero rationals.
struct FamilySampler {
  std::vector<Rational> values{Rational(1), Rational(-2), Rational(3, 7)};
  std::size_t max_params = 16;
};

struct FamilySample {
  std::uint64_t zero_mask = 0;  // bit p set: parameter p is zero
  std::vector<Rational> assignment;
  std::vector<TruncatedSeries> members;
};

/// All samples, grouped by zero pattern (pattern-major order). In sample s,
/// nonzero parameter p takes values[(s + p) % values.size()], so each
/// parameter sees every sample value exactly once per pattern.
inline std::vector<FamilySample> sample_family(const SolutionFamily& fam, const FamilySampler& sampler) {
  std::set<Rational> distinct(sampler.values.begin(), sampler.values.end());
  if (distinct.size() < 3 || distinct.count(Rational(0)) || distinct.size() != sampler.values.size())
    throw invalid_input_error("family sampler needs at least 3 distinct nonzero values");
  const std::size_t p = fam.params.size();
  if (p > sampler.max_params)
    throw invalid_input_error("family has " + std::to_string(p) + " parameters; the sampler allows at most " +
                              std::to_string(sampler.max_params));
  const std::size_t samples = p == 0 ? 1 : sampler.values.size();
  std::vector<FamilySample> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
    for (std::size_t s = 0; s < samples; ++s) {
      FamilySample fs;
      fs.zero_mask = mask;
      for (std::size_t q = 0; q < p; ++q)
        fs.assignment.push_back((mask >> q) & 1 ? Rational(0) : sampler.values[(s + q) % sampler.values.size()]);
      fs.members = fam.evaluate(fs.assignment);
      out.push_back(std::move(fs));
    }
  }
  return out;
}

struct FamilyTropicalization {
  /// Support tuples whose components all lie in {0, ..., window}.
  std::vector<SupportTuple> tuples;
  /// Support tuples with some element beyond the window.
  std::vector<SupportTuple> outside_window;
  /// Zero patterns whose samples produced different supports.
  std::vector<std::string> cancellations;
};

namespace detail {

inline std::string describe_pattern(const SolutionFamily& fam, std::uint64_t mask) {
  std::string s;
  for (std::size_t q = 0; q < fam.params.size(); ++q) {
    if (q) s += ", ";
    s += fam.params[q] + ((mask >> q) & 1 ? "=0" : "!=0");
  }
  return s.empty() ? "(no parameters)" : s;
}

inline bool fits_window(const SupportTuple& t, std::uint64_t window) {
  for (const auto& s : t) {
    if (!s.is_finite()) return false;
    if (!s.finite_part().empty() && s.finite_part().back() > window) return false;
  }
  return true;
}

}  // namespace detail

/// trop(T) for the family T, computed over all zero/nonzero parameter
/// patterns. Within a pattern the supports of all samples are united.
inline FamilyTropicalization trop_of_family(const SolutionFamily& fam, std::uint64_t window,
                                            const FamilySampler& sampler = {}) {
  auto samples = sample_family(fam, sampler);
  std::set<SupportTuple> all;
  FamilyTropicalization out;
  for (std::size_t i = 0; i < samples.size();) {
    const auto mask = samples[i].zero_mask;
    std::optional<SupportTuple> first;
    std::vector<std::set<std::uint64_t>> united(fam.n());
    bool disagree = false;
    for (; i < samples.size() && samples[i].zero_mask == mask; ++i) {
      SupportTuple t;
      for (std::size_t c = 0; c < fam.n(); ++c) {
        t.push_back(support(samples[i].members[c]).set);
        for (auto e : t.back().finite_part()) united[c].insert(e);
      }
      if (!first)
        first = t;
      else if (*first != t)
        disagree = true;
    }
    SupportTuple u;
    for (auto& s : united) u.emplace_back(std::vector<std::uint64_t>(s.begin(), s.end()));
    if (disagree) out.cancellations.push_back(detail::describe_pattern(fam, mask));
    all.insert(std::move(u));
  }
  for (auto& t : all) (detail::fits_window(t, window) ? out.tuples : out.outside_window).push_back(t);
  return out;
}

}  // namespace tropdiff
