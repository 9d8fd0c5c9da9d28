#pragma once

#include "json.hpp"

#include "tropdiff/diff_poly.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/family.hpp"
#include "tropdiff/parse.hpp"
#include "tropdiff/series.hpp"
#include "tropdiff/solver.hpp"
#include "tropdiff/support_set.hpp"
#include "tropdiff/trop_poly.hpp"
#include "tropdiff/trop_value.hpp"

#include <string>

// JSON forms of the domain values. Rationals are strings ("1/6"), ∞ is the
// string "inf", exponent matrices are arrays of rows.

namespace tropdiff {

using json = nlohmann::json;

inline json rational_json(const Rational& q) { return q.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  auto s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw invalid_input_error("zero denominator in " + s);
    return Rational(Integer(s.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw invalid_input_error("malformed rational: " + s);
  }
}

inline void to_json(json& j, const TropValue& v) {
  if (v.is_infinite())
    j = "inf";
  else
    j = v.value();
}

inline void from_json(const json& j, TropValue& v) {
  v = j.is_string() && j.get<std::string>() == "inf" ? TropValue::infinity() : TropValue(j.get<std::uint64_t>());
}

inline void to_json(json& j, const SupportSet& s) {
  j = json{{"finite", s.finite_part()}, {"tail_from", nullptr}};
  if (s.tail_from()) j["tail_from"] = *s.tail_from();
}

inline void from_json(const json& j, SupportSet& s) {
  std::optional<std::uint64_t> tail;
  if (j.contains("tail_from") && !j.at("tail_from").is_null()) tail = j.at("tail_from").get<std::uint64_t>();
  s = SupportSet(j.at("finite").get<std::vector<std::uint64_t>>(), tail);
}

inline void to_json(json& j, const ExponentMatrix& m) { j = m.rows(); }

inline void from_json(const json& j, ExponentMatrix& m) {
  m = ExponentMatrix(j.get<std::vector<std::vector<std::uint32_t>>>());
}

inline void to_json(json& j, const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [k, c] : s.coefficients()) terms.push_back(json::array({k, rational_json(c)}));
  j = json{{"terms", terms}, {"text", to_string(s)}};
  if (s.precision())
    j["precision"] = *s.precision();
  else
    j["precision"] = "exact";
}

inline void from_json(const json& j, TruncatedSeries& s) {
  TruncatedSeries::Coefficients coeffs;
  for (const auto& t : j.at("terms")) coeffs[t.at(0).get<std::uint64_t>()] += rational_from_json(t.at(1));
  const auto& p = j.at("precision");
  s = p.is_string() ? TruncatedSeries::exact(std::move(coeffs))
                    : TruncatedSeries::truncated(std::move(coeffs), p.get<std::uint64_t>());
}

inline void to_json(json& j, const CoeffSequence& a) {
  json entries = json::array();
  for (const auto& [k, c] : a.entries()) entries.push_back(json::array({k, rational_json(c)}));
  j = json{{"entries", entries}};
}

inline void from_json(const json& j, CoeffSequence& a) {
  CoeffSequence::Entries e;
  for (const auto& t : j.at("entries")) e[t.at(0).get<std::uint64_t>()] += rational_from_json(t.at(1));
  a = CoeffSequence(std::move(e));
}

inline void to_json(json& j, const DiffPolynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(json{{"exponents", m}, {"coefficient", c}});
  j = json{{"n", p.n()}, {"terms", terms}, {"text", to_string(p)}};
}

inline void from_json(const json& j, DiffPolynomial& p) {
  DiffPolynomial out(j.at("n").get<std::size_t>());
  for (const auto& t : j.at("terms"))
    out.add_term(t.at("exponents").get<ExponentMatrix>(), t.at("coefficient").get<TruncatedSeries>());
  p = std::move(out);
}

inline void to_json(json& j, const TropDiffPolynomial& p) {
  json terms = json::array();
  for (const auto& [m, a] : p.terms()) terms.push_back(json{{"coefficient", a}, {"exponents", m}});
  j = json{{"n", p.n()}, {"terms", terms}, {"text", to_string(p)}};
}

inline void from_json(const json& j, TropDiffPolynomial& p) {
  TropDiffPolynomial out(j.at("n").get<std::size_t>());
  for (const auto& t : j.at("terms"))
    out.add_term(t.at("exponents").get<ExponentMatrix>(), TropValue(t.at("coefficient").get<std::uint64_t>()));
  p = std::move(out);
}

inline void to_json(json& j, const OrdinaryPolynomial& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back(json{{"coefficient", rational_json(c)}, {"exponents", m}});
  j = json{{"n", f.n()}, {"terms", terms}, {"text", to_string(f)}};
}

inline void to_json(json& j, const WindowSpec& w) { j = json{{"bound", w.bound}, {"allow_tail", w.allow_tail}}; }

inline void to_json(json& j, const TropSolutionCheck& c) {
  json mins = json::array();
  for (const auto& m : c.minimizers) mins.push_back(json{{"exponents", m}, {"text", monomial_string(m, " (*) ")}});
  j = json{{"is_solution", c.is_solution}, {"value", c.value}, {"minimizers", mins}};
}

inline void to_json(json& j, const SeriesCheckResult& r) {
  j = json{{"ok", r.ok}};
  if (!r.ok)
    j["failure"] = json{{"generator", r.failing_generator},
                        {"exponent", r.exponent},
                        {"coefficient", rational_json(r.coefficient)}};
}

inline void to_json(json& j, const JetWitnessResult& r) {
  j = json{{"status", to_string(r.status)},
           {"max_order", r.max_order},
           {"method", r.method},
           {"reason", r.reason},
           {"witness", nullptr}};
  if (r.status == JetWitnessStatus::found) j["witness"] = r.witness;
}

inline void to_json(json& j, const FamilyTropicalization& f) {
  j = json{{"tuples", f.tuples}, {"outside_window", f.outside_window}, {"cancellations", f.cancellations}};
}

inline void to_json(json& j, const FTReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back(json{{"generator", w.generator}, {"derivative", w.derivative}, {"trop", w.trop}});
  j = json{{"window", r.window},
           {"depth", r.depth},
           {"witnesses", witnesses},
           {"trop_sol", r.trop_sol},
           {"sol_trop", r.sol_trop},
           {"inclusion_ok", r.inclusion_ok},
           {"equal", r.equal},
           {"verdict", r.verdict()},
           {"discrepancies", r.discrepancies},
           {"family_outside_window", r.family_outside_window},
           {"cancellations", r.cancellations}};
}

}  // namespace tropdiff
