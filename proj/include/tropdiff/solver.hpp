#pragma once

#include "tropdiff/diff_poly.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/family.hpp"
#include "tropdiff/linear_system.hpp"
#include "tropdiff/series.hpp"
#include "tropdiff/support_set.hpp"
#include "tropdiff/trop_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace tropdiff {

// ---------------------------------------------------------------------------
// Tropical solution enumeration over a window.

/// Candidate supports per component: every subset of {0, ..., bound}, and
/// with `allow_tail` also each such subset ∪ [bound+1, ∞).
struct WindowSpec {
  std::uint64_t bound = 0;
  bool allow_tail = false;
};

inline std::vector<SupportSet> window_candidates(const WindowSpec& w) {
  if (w.bound >= 40) throw search_space_error("window bound too large", std::ldexp(1.0L, 41), 0);
  std::vector<SupportSet> out;
  const std::uint64_t count = std::uint64_t{1} << (w.bound + 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<std::uint64_t> elems;
    for (std::uint64_t j = 0; j <= w.bound; ++j)
      if ((mask >> j) & 1) elems.push_back(j);
    out.emplace_back(elems);
    if (w.allow_tail) out.emplace_back(std::move(elems), w.bound + 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct EnumerationOptions {
  std::uint64_t cap = std::uint64_t{1} << 20;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

namespace detail {

struct CompiledTerm {
  std::uint64_t coeff;
  std::vector<std::tuple<std::size_t, std::uint32_t, std::uint32_t>> factors;  // (component, order, exponent)
};

inline std::vector<std::vector<CompiledTerm>> compile(std::span<const TropDiffPolynomial> system) {
  std::vector<std::vector<CompiledTerm>> out;
  for (const auto& p : system) {
    auto& terms = out.emplace_back();
    for (const auto& [m, a] : p.terms()) {
      CompiledTerm t{a, {}};
      for (const auto& [v, e] : m.entries()) t.factors.emplace_back(v.var - 1, v.order, e);
      terms.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace detail

/// Every support tuple of the window that solves all of `system`, in
/// ascending lexicographic order.
inline std::vector<SupportTuple> enumerate_tropical_solutions(std::span<const TropDiffPolynomial> system,
                                                              std::size_t n, const WindowSpec& w,
                                                              const EnumerationOptions& opts = {}) {
  for (const auto& p : system)
    if (p.n() != n)
      throw invalid_input_error("tropical polynomial in " + std::to_string(p.n()) + " unknowns in a system of " +
                                std::to_string(n));
  const auto candidates = window_candidates(w);
  const std::uint64_t c = candidates.size();
  const long double size = std::pow(static_cast<long double>(c), static_cast<long double>(n));
  if (size > static_cast<long double>(opts.cap))
    throw search_space_error("search space of " + std::to_string(static_cast<double>(size)) +
                                 " tuples exceeds the cap of " + std::to_string(opts.cap),
                             size, opts.cap);
  const std::uint64_t total = n == 0 ? 1 : static_cast<std::uint64_t>(size);

  std::uint32_t max_order = 0;
  for (const auto& p : system) max_order = std::max(max_order, p.order());
  // vals[o][j] = Val_{candidate o}(j)
  std::vector<std::vector<TropValue>> vals(c);
  for (std::uint64_t o = 0; o < c; ++o)
    for (std::uint32_t j = 0; j <= max_order; ++j) vals[o].push_back(val_at(candidates[o], j));
  const auto compiled = detail::compile(system);

  auto solves_all = [&](const std::vector<std::uint64_t>& digits) {
    for (const auto& terms : compiled) {
      TropValue best = TropValue::infinity();
      std::size_t hits = 0;
      for (const auto& t : terms) {
        TropValue v(t.coeff);
        for (const auto& [comp, ord, e] : t.factors) {
          v = trop_mul(v, trop_pow(vals[digits[comp]][ord], e));
          if (v.is_infinite()) break;
        }
        if (v < best) {
          best = v;
          hits = 1;
        } else if (v == best && v.is_finite()) {
          ++hits;
        }
      }
      if (best.is_finite() && hits < 2) return false;
    }
    return true;
  };

  // Component 0 is the most significant digit, so index order is the
  // lexicographic order of tuples.
  auto scan = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& hits) {
    std::vector<std::uint64_t> digits(n);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t k = n; k-- > 0;) {
        digits[k] = rest % c;
        rest /= c;
      }
      if (solves_all(digits)) hits.push_back(idx);
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total / 4096)));
  std::vector<std::vector<std::uint64_t>> hits(threads);
  if (threads == 1) {
    scan(0, total, hits[0]);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] { scan(std::min(total, t * chunk), std::min(total, (t + 1) * chunk), hits[t]); });
  }

  std::vector<SupportTuple> out;
  for (const auto& part : hits) {
    for (auto idx : part) {
      SupportTuple tuple(n);
      for (std::size_t k = n; k-- > 0;) {
        tuple[k] = candidates[idx % c];
        idx /= c;
      }
      out.push_back(std::move(tuple));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series solutions.

struct SeriesCheckResult {
  bool ok = true;
  std::size_t failing_generator = 0;
  std::uint64_t exponent = 0;
  Rational coefficient = 0;
};

/// Every generator vanishes at φ modulo t^order.
inline SeriesCheckResult check_series_solution(std::span<const DiffPolynomial> gens,
                                               std::span<const TruncatedSeries> phi, std::uint64_t order) {
  for (std::size_t g = 0; g < gens.size(); ++g) {
    auto residue = eval_poly(gens[g].n() < phi.size() ? gens[g].widened(phi.size()) : gens[g], phi);
    if (residue.precision() && *residue.precision() < order)
      throw precision_error("residue of generator " + std::to_string(g) + " is only known modulo O(t^" +
                            std::to_string(*residue.precision()) + "), need O(t^" + std::to_string(order) + ")");
    for (const auto& [k, c] : residue.coefficients()) {
      if (k >= order) break;
      return {false, g, k, c};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Jet-level witness search on a torus slice.

enum class JetStrategy { automatic, linear, grid, random };

struct JetSearchOptions {
  JetStrategy strategy = JetStrategy::automatic;
  std::vector<Rational> grid_values{1, -1, 2, -2, Rational(1, 2), Rational(-1, 2), 3};
  std::uint64_t grid_cap = 50000;
  std::uint64_t random_attempts = 20000;
  std::int64_t random_height = 6;
  std::uint64_t seed = 0;
};

enum class JetWitnessStatus { found, empty, inconclusive };

inline const char* to_string(JetWitnessStatus s) {
  switch (s) {
    case JetWitnessStatus::found: return "found";
    case JetWitnessStatus::empty: return "empty";
    case JetWitnessStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

struct JetWitnessResult {
  JetWitnessStatus status = JetWitnessStatus::inconclusive;
  /// One coefficient sequence per unknown, indices 0..max_order.
  std::vector<CoeffSequence> witness;
  std::uint32_t max_order = 0;
  std::string method;
  std::string reason;
};

namespace detail {

// Drops every term containing a variable that the torus pattern pins to 0.
inline OrdinaryPolynomial restrict_to_torus(const OrdinaryPolynomial& f, std::span<const SupportSet> s) {
  OrdinaryPolynomial out(f.n());
  for (const auto& [m, c] : f.terms()) {
    bool vanishes = false;
    for (const auto& [v, e] : m.entries())
      if (!s[v.var - 1].contains(v.order)) vanishes = true;
    if (!vanishes) out.add_term(m, c);
  }
  return out;
}

inline std::vector<CoeffSequence> to_sequences(std::size_t n, const std::vector<JetVar>& unknowns,
                                               const std::vector<Rational>& values) {
  std::vector<CoeffSequence::Entries> entries(n);
  for (std::size_t k = 0; k < unknowns.size(); ++k) entries[unknowns[k].var - 1][unknowns[k].order] = values[k];
  std::vector<CoeffSequence> out;
  for (auto& e : entries) out.emplace_back(std::move(e));
  return out;
}

inline bool annihilates(const std::vector<OrdinaryPolynomial>& polys, std::span<const CoeffSequence> a) {
  for (const auto& f : polys)
    if (eval_ordinary(f, a) != 0) return false;
  return true;
}

}  // namespace detail

/// Looks for a point of A_m on the torus slice of S: x_ij = 0 exactly when
/// j ∉ S_i (j <= N_m) and every F_{ℓk}, k <= m, vanishes.
inline JetWitnessResult jet_witness_search(std::span<const DiffPolynomial> gens, std::span<const SupportSet> s,
                                           std::uint64_t m, const JetSearchOptions& opts = {}) {
  const std::size_t n = s.size();
  JetWitnessResult out;
  std::vector<OrdinaryPolynomial> polys;
  for (const auto& g : gens) {
    if (g.n() > n) throw invalid_input_error("generator has more unknowns than the support tuple");
    auto jets = jet_polys(g.widened(n), m);
    out.max_order = std::max(out.max_order, jets.max_order);
    for (auto& f : jets.polys) polys.push_back(std::move(f));
  }

  std::vector<JetVar> unknowns;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 0; j <= out.max_order; ++j)
      if (s[i - 1].contains(j)) unknowns.push_back({i, j});

  std::vector<OrdinaryPolynomial> reduced;
  for (const auto& f : polys)
    if (auto r = detail::restrict_to_torus(f, s); !r.is_zero()) reduced.push_back(std::move(r));
  const bool affine = std::all_of(reduced.begin(), reduced.end(), [](const auto& f) { return f.is_affine_linear(); });

  // A single surviving term is a nonzero constant or a monomial in torus
  // coordinates; neither vanishes. Affine slices get the same verdict from
  // the linear solve below.
  if (!affine) {
    for (const auto& r : reduced) {
      if (r.terms().size() != 1) continue;
      out.status = JetWitnessStatus::empty;
      out.method = "torus";
      out.reason = "constraint " + to_string(r) + " cannot vanish on the torus slice";
      return out;
    }
  }

  auto accept = [&](const std::vector<Rational>& values, const std::string& method) {
    for (const auto& v : values)
      if (v == 0) return false;
    auto a = detail::to_sequences(n, unknowns, values);
    if (!detail::annihilates(polys, a)) return false;
    out.status = JetWitnessStatus::found;
    out.witness = std::move(a);
    out.method = method;
    return true;
  };

  if (reduced.empty() && accept(std::vector<Rational>(unknowns.size(), 1), "trivial")) return out;

  auto strategy = opts.strategy;
  if (strategy == JetStrategy::linear && !affine)
    throw invalid_input_error("the linear strategy needs affine-linear constraints on the torus slice");
  if (strategy == JetStrategy::automatic) strategy = affine ? JetStrategy::linear : JetStrategy::grid;

  std::mt19937_64 rng(opts.seed);

  if (strategy == JetStrategy::linear) {
    std::map<JetVar, std::size_t> column;
    for (std::size_t k = 0; k < unknowns.size(); ++k) column[unknowns[k]] = k;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const auto& f : reduced) {
      std::vector<Rational> row(unknowns.size(), 0);
      Rational rhs = 0;
      for (const auto& [mono, c] : f.terms()) {
        if (mono.is_constant())
          rhs -= c;
        else
          row[column.at(mono.entries().front().first)] += c;
      }
      a.push_back(std::move(row));
      b.push_back(rhs);
    }
    auto sol = solve_affine(std::move(a), std::move(b), unknowns.size());
    out.method = "linear";
    if (!sol) {
      out.status = JetWitnessStatus::empty;
      out.reason = "the linear system on the torus slice is inconsistent";
      return out;
    }
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
      if (sol->identically_zero(k)) {
        out.status = JetWitnessStatus::empty;
        out.reason = "every solution has x" + std::to_string(unknowns[k].var) + "_" +
                     std::to_string(unknowns[k].order) + " = 0, contradicting the support pattern";
        return out;
      }
    }
    // No coordinate vanishes identically, so a generic parameter choice
    // avoids the finitely many hyperplanes where one does.
    const std::size_t f = sol->free_columns.size();
    std::vector<Rational> params(f, 1);
    if (accept(sol->point(params), "linear")) return out;
    std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
    for (std::uint64_t attempt = 0; attempt < opts.random_attempts; ++attempt) {
      for (auto& p : params) p = dist(rng);
      if (accept(sol->point(params), "linear")) return out;
    }
    out.reason = "no nonvanishing point found in the solution space";
    return out;
  }

  auto eval_reduced = [&](const std::vector<Rational>& values) {
    return detail::annihilates(reduced, detail::to_sequences(n, unknowns, values));
  };

  if (strategy == JetStrategy::grid) {
    const std::size_t u = unknowns.size();
    const std::size_t g = opts.grid_values.size();
    const long double combos = std::pow(static_cast<long double>(g), static_cast<long double>(u));
    if (combos <= static_cast<long double>(opts.grid_cap)) {
      std::vector<std::size_t> digit(u, 0);
      std::vector<Rational> values(u);
      for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(combos); ++idx) {
        std::uint64_t rest = idx;
        for (std::size_t k = 0; k < u; ++k) {
          values[k] = opts.grid_values[rest % g];
          rest /= g;
        }
        if (eval_reduced(values) && accept(values, "grid")) return out;
      }
      out.reason = "grid exhausted";
    } else {
      out.reason = "grid too large";
    }
    if (opts.strategy == JetStrategy::grid) {
      out.method = "grid";
      return out;
    }
    strategy = JetStrategy::random;
  }

  // Random sampling.
  std::uniform_int_distribution<std::int64_t> num(-opts.random_height, opts.random_height);
  std::uniform_int_distribution<std::int64_t> den(1, opts.random_height);
  std::vector<Rational> values(unknowns.size());
  for (std::uint64_t attempt = 0; attempt < opts.random_attempts; ++attempt) {
    for (auto& v : values) {
      std::int64_t p = 0;
      while (p == 0) p = num(rng);
      v = Rational(p, den(rng));
    }
    if (eval_reduced(values) && accept(values, "random")) return out;
  }
  out.method = out.method.empty() ? "random" : out.method + "+random";
  out.reason = out.reason.empty() ? "random sampling found no point" : out.reason + "; random sampling found no point";
  return out;
}

// ---------------------------------------------------------------------------
// Comparison of Sol(trop(G)) and trop(Sol(G)) over a window.

struct WitnessEntry {
  std::size_t generator = 0;
  std::uint64_t derivative = 0;
  TropDiffPolynomial trop;
};

struct FTReport {
  WindowSpec window;
  std::uint64_t depth = 0;
  std::vector<WitnessEntry> witnesses;
  std::vector<SupportTuple> trop_sol;  // trop(Sol(G)) from the family, in the window
  std::vector<SupportTuple> sol_trop;  // enumerated Sol(trop(W))
  bool inclusion_ok = false;
  bool equal = false;
  std::vector<SupportTuple> discrepancies;  // sol_trop \ trop_sol
  std::vector<SupportTuple> family_outside_window;
  std::vector<std::string> cancellations;

  std::string verdict() const {
    if (!inclusion_ok) return "inclusion violated";
    if (equal) return "equal";
    return "inclusion only (inconclusive at depth " + std::to_string(depth) + ")";
  }
};

struct FTOptions {
  EnumerationOptions enumeration;
  FamilySampler sampler;
};

/// Builds W = {d^k f : f ∈ gens, k <= depth}, enumerates the tropical
/// solutions of trop(W) over the window, and compares them with the
/// supports of the family.
inline FTReport verify_fundamental_theorem(std::span<const DiffPolynomial> gens, const SolutionFamily& fam,
                                           const WindowSpec& w, std::uint64_t depth, const FTOptions& opts = {}) {
  const std::size_t n = fam.n();
  std::vector<DiffPolynomial> widened;
  for (const auto& g : gens) {
    if (g.n() > n)
      throw invalid_input_error("generator uses " + std::to_string(g.n()) + " unknowns but the family has " +
                                std::to_string(n) + " components");
    if (!g.has_exact_coefficients()) throw invalid_input_error("generators must have exact coefficients");
    widened.push_back(g.widened(n));
  }

  for (const auto& sample : sample_family(fam, opts.sampler)) {
    for (std::size_t g = 0; g < widened.size(); ++g) {
      auto residue = eval_poly(widened[g], sample.members);
      if (!residue.is_exact_zero()) {
        std::string member;
        for (const auto& s : sample.members) member += (member.empty() ? "" : ", ") + to_string(s);
        throw invalid_input_error("family member (" + member + ") is not a solution of generator " +
                                  std::to_string(g) + ": residue " + to_string(residue));
      }
    }
  }

  FTReport report;
  report.window = w;
  report.depth = depth;
  std::vector<TropDiffPolynomial> system;
  for (std::size_t g = 0; g < widened.size(); ++g) {
    DiffPolynomial d = widened[g];
    for (std::uint64_t k = 0; k <= depth; ++k) {
      report.witnesses.push_back({g, k, tropicalize(d)});
      system.push_back(report.witnesses.back().trop);
      if (k < depth) d = derive_poly(d);
    }
  }

  report.sol_trop = enumerate_tropical_solutions(system, n, w, opts.enumeration);
  auto fam_trop = trop_of_family(fam, w.bound, opts.sampler);
  report.trop_sol = std::move(fam_trop.tuples);
  report.family_outside_window = std::move(fam_trop.outside_window);
  report.cancellations = std::move(fam_trop.cancellations);

  report.inclusion_ok = std::includes(report.sol_trop.begin(), report.sol_trop.end(), report.trop_sol.begin(),
                                      report.trop_sol.end());
  std::set_difference(report.sol_trop.begin(), report.sol_trop.end(), report.trop_sol.begin(),
                      report.trop_sol.end(), std::back_inserter(report.discrepancies));
  report.equal = report.inclusion_ok && report.discrepancies.empty();
  return report;
}

}  // namespace tropdiff
