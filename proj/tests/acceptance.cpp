// Acceptance run: one PASS/FAIL line per criterion.
#include "generators.hpp"
#include "oracles.hpp"

#include <tropdiff/json_io.hpp>
#include <tropdiff/tropdiff.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace tropdiff;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_seconds,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit_seconds) {
    if (o.ok) o.detail = "took too long";
    o.ok = false;
  }
  if (!o.ok) ++failures;
  std::ostringstream line;
  line.precision(3);
  line << std::fixed << (o.ok ? "PASS" : "FAIL") << "  " << id << "  " << title << "  [" << secs << " s < "
       << limit_seconds << " s]";
  if (!o.ok) line << "  -- " << o.detail;
  std::cout << line.str() << std::endl;
}

std::vector<SupportTuple> singles(std::vector<std::vector<std::uint64_t>> sets) {
  std::vector<SupportTuple> out;
  for (auto& s : sets) out.push_back({SupportSet(s)});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string corpus_path = argc > 1 ? argv[1] : TROPDIFF_CORPUS;

  criterion("1", "family tropicalization, two unknowns (8 pairs)", 1.0, [](Outcome& o) {
    auto got = trop_of_family(parse_family("(a + 5*t + b*t^2, 2 + a*t - 8*t^2 + c*t^3)"), 5).tuples;
    std::vector<SupportTuple> expected;
    for (auto [x, y] : std::vector<std::pair<const char*, const char*>>{
             {"{1}", "{0,2}"},
             {"{0,1}", "{0,1,2}"},
             {"{1,2}", "{0,2}"},
             {"{1}", "{0,2,3}"},
             {"{0,1,2}", "{0,1,2}"},
             {"{0,1}", "{0,1,2,3}"},
             {"{1,2}", "{0,2,3}"},
             {"{0,1,2}", "{0,1,2,3}"}})
      expected.push_back({parse_support_set(x), parse_support_set(y)});
    std::sort(expected.begin(), expected.end());
    o.require(got == expected, "got " + std::to_string(got.size()) + " pairs");
  });

  criterion("2", "Val_{1,3,4}(2) = 1 and Val_{1,3,4}(5) = inf", 1.0, [](Outcome& o) {
    SupportSet s({1, 3, 4});
    o.require(val_at(s, 2) == TropValue(1), "Val(2) = " + to_string(val_at(s, 2)));
    o.require(val_at(s, 5).is_infinite(), "Val(5) = " + to_string(val_at(s, 5)));
  });

  criterion("3", "three-term tropical polynomial, N = 5 (12 sets, oracle over 64 subsets)", 1.0, [](Outcome& o) {
    std::vector<TropDiffPolynomial> h{parse_trop_poly("1 (*) x1' (+) 2 (*) x1^(3) (+) 3")};
    auto got = enumerate_tropical_solutions(h, 1, {5, false});
    std::vector<SupportTuple> expected;
    for (std::uint64_t b = 0; b < 2; ++b) {
      for (std::uint64_t c = 0; c < 4; ++c) {
        std::vector<std::uint64_t> s{2, 3};
        if (b) s.push_back(0);
        if (c & 1) s.push_back(4);
        if (c & 2) s.push_back(5);
        expected.push_back({SupportSet(s)});
      }
      for (std::uint64_t c = 0; c < 2; ++c) {
        std::vector<std::uint64_t> s{4};
        if (b) s.push_back(0);
        if (c) s.push_back(5);
        expected.push_back({SupportSet(s)});
      }
    }
    std::sort(expected.begin(), expected.end());
    o.require(expected.size() == 12, "set-builder list is not 12 long");
    o.require(got == expected, "got " + std::to_string(got.size()) + " sets");
    o.require(oracle::subsets(5).size() == 64, "oracle scans the wrong space");
    o.require(got == oracle::enumerate(h, 1, 5), "differs from the naive scan");
  });

  criterion("4", "x'' - t pipeline at N = 4", 1.0, [](Outcome& o) {
    auto gen = parse_diff_poly("x1'' - t");
    auto fam = parse_family("c1 + c2*t + 1/6*t^3");
    auto four = singles({{0, 1, 3}, {0, 3}, {1, 3}, {3}});
    o.require(trop_of_family(fam, 4).tuples == four, "trop_of_family");
    std::vector<TropDiffPolynomial> h{tropicalize(gen)};
    auto sols = enumerate_tropical_solutions(h, 1, {4, false});
    bool shape = sols.size() == 8;
    for (const auto& s : sols) shape = shape && !s[0].contains(2) && s[0].contains(3);
    o.require(shape, "Sol(trop(P)) is not the 8 sets with 2 out, 3 in");
    h.push_back(tropicalize(derive_poly(gen, 2)));
    o.require(to_string(h.back()) == "x1^(4)", "trop(d^2 P) = " + to_string(h.back()));
    o.require(enumerate_tropical_solutions(h, 1, {4, false}) == four, "adding trop(d^2 P) does not cut to 4");
    std::vector<DiffPolynomial> gens{gen};
    o.require(verify_fundamental_theorem(gens, fam, {4, false}, 2).verdict() == "equal", "K = 2 not equal");
    auto k0 = verify_fundamental_theorem(gens, fam, {4, false}, 0);
    o.require(k0.inclusion_ok && !k0.equal && k0.verdict().starts_with("inclusion only"), "K = 0 verdict");
  });

  criterion("5", "semiring laws, Val/shift, derivative support shift (>= 1000 each)", 30.0, [](Outcome& o) {
    gen::Random r(501);
    int count = 0;
    for (int i = 0; i < 1000; ++i, ++count) {
      auto a = r.trop_value(), b = r.trop_value(), c = r.trop_value();
      bool laws = trop_add(a, trop_add(b, c)) == trop_add(trop_add(a, b), c) &&
                  trop_mul(a, trop_mul(b, c)) == trop_mul(trop_mul(a, b), c) && trop_add(a, b) == trop_add(b, a) &&
                  trop_mul(a, b) == trop_mul(b, a) &&
                  trop_mul(a, trop_add(b, c)) == trop_add(trop_mul(a, b), trop_mul(a, c)) &&
                  trop_add(a, TropValue::infinity()) == a && trop_mul(a, TropValue(0)) == a &&
                  trop_mul(a, TropValue::infinity()).is_infinite();
      o.require(laws, "semiring law at " + to_string(a) + ", " + to_string(b) + ", " + to_string(c));

      auto s = r.support();
      auto j = static_cast<std::uint64_t>(r.integer(0, 10)), k = static_cast<std::uint64_t>(r.integer(0, 10));
      o.require(val_at(shift_support(s, j), k) == val_at(s, j + k), "Val/shift at " + to_string(s));
      auto ov = oracle::val(s, k);
      o.require(val_at(s, k) == (ov ? TropValue(*ov) : TropValue::infinity()), "Val oracle at " + to_string(s));

      auto phi = r.exact_series(8);
      o.require(support(derive_series(phi)).set == shift_support(support(phi).set, 1),
                "derivative support of " + to_string(phi));
    }
    o.require(count >= 1000, "too few instances");
  });

  criterion("6", "coefficient identity from jet polynomials, k <= 5 (>= 100 pairs)", 30.0, [](Outcome& o) {
    gen::Random r(601);
    for (int i = 0; i < 120; ++i) {
      auto n = static_cast<std::size_t>(r.integer(1, 2));
      auto p = r.diff_poly(n, 3, 2);
      std::vector<CoeffSequence> a;
      std::vector<TruncatedSeries> phi;
      for (std::size_t c = 0; c < n; ++c) {
        a.push_back(r.coeff_sequence(9));
        phi.push_back(psi(a.back()));
      }
      auto value = eval_poly(p, phi);
      auto jets = jet_polys(p, 5);
      for (std::uint64_t k = 0; k <= 5; ++k)
        o.require(value.coefficient(k) == eval_ordinary(jets.polys[k], a) / factorial(k),
                  "k = " + std::to_string(k) + " for " + to_string(p));
    }
  });

  criterion("7", "derivation commutes with evaluation (>= 100 instances)", 30.0, [](Outcome& o) {
    gen::Random r(701);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
      auto n = static_cast<std::size_t>(r.integer(1, 2));
      auto p = r.diff_poly(n, 3, 2);
      std::vector<TruncatedSeries> phi;
      bool truncate = i % 2 == 1;
      for (std::size_t c = 0; c < n; ++c) {
        auto s = r.exact_series(7);
        phi.push_back(truncate ? TruncatedSeries::truncated(s.coefficients(), 14) : s);
      }
      auto k = static_cast<std::uint64_t>(r.integer(0, 4));
      auto lhs = eval_poly(derive_poly(p, k), phi);
      auto rhs = derive_series(eval_poly(p, phi), k);
      auto prec = std::min(lhs.precision().value_or(64), rhs.precision().value_or(64));
      bool same = lhs.precision() == rhs.precision();
      for (std::uint64_t e = 0; e < prec; ++e) same = same && lhs.coefficient(e) == rhs.coefficient(e);
      o.require(same, "k = " + std::to_string(k) + " for " + to_string(p));
      ++checked;
    }
    o.require(checked >= 100, "too few instances");
  });

  criterion("8", "monomial valuation equals tropical monomial (>= 100 instances)", 30.0, [](Outcome& o) {
    gen::Random r(801);
    for (int i = 0; i < 300; ++i) {
      auto n = static_cast<std::size_t>(r.integer(1, 3));
      auto m = r.exponent_matrix(n, 3, 4);
      std::vector<TruncatedSeries> phi;
      SupportTuple s;
      for (std::size_t c = 0; c < n; ++c) {
        phi.push_back(r.exact_series(6));
        s.push_back(support(phi.back()).set);
      }
      auto expected = oracle::trop_monomial(m, s);
      o.require(valuation(eval_monomial(m, phi)) == (expected ? TropValue(*expected) : TropValue::infinity()),
                monomial_string(m, "*"));
    }
  });

  criterion("9", "inclusion on every corpus run; monotone in K = 0..3 for x'' - t", 30.0, [&](Outcome& o) {
    std::ifstream in(corpus_path);
    o.require(static_cast<bool>(in), "cannot open " + corpus_path);
    if (!in) return;
    auto corpus = nlohmann::json::parse(in);
    int runs = 0;
    for (const auto& inst : corpus.at("instances")) {
      std::vector<DiffPolynomial> gens;
      for (const auto& g : inst.at("generators")) gens.push_back(parse_diff_poly(g.get<std::string>()));
      auto fam = parse_family(inst.at("family").get<std::string>());
      WindowSpec w{inst.at("window").get<std::uint64_t>(), inst.value("tail", false)};
      for (const auto& k : inst.at("depths")) {
        auto rep = verify_fundamental_theorem(gens, fam, w, k.get<std::uint64_t>());
        o.require(rep.inclusion_ok, inst.at("name").get<std::string>() + " at K = " + k.dump());
        ++runs;
      }
    }
    o.require(runs > 0, "empty corpus");

    std::vector<DiffPolynomial> gens{parse_diff_poly("x1'' - t")};
    auto fam = parse_family("c1 + c2*t + 1/6*t^3");
    std::vector<SupportTuple> prev;
    for (std::uint64_t k = 0; k <= 3; ++k) {
      auto rep = verify_fundamental_theorem(gens, fam, {4, false}, k);
      o.require(rep.inclusion_ok, "x'' - t inclusion at K = " + std::to_string(k));
      if (k > 0)
        o.require(std::includes(prev.begin(), prev.end(), rep.sol_trop.begin(), rep.sol_trop.end()),
                  "not monotone at K = " + std::to_string(k));
      prev = rep.sol_trop;
    }
  });

  criterion("10", "jet witness for x'' - t: S = {3} found, S = {2} infeasible", 1.0, [](Outcome& o) {
    std::vector<DiffPolynomial> gens{parse_diff_poly("x1'' - t")};
    JetSearchOptions linear;
    linear.strategy = JetStrategy::linear;
    auto found = jet_witness_search(gens, SupportTuple{SupportSet({3})}, 2, linear);
    o.require(found.status == JetWitnessStatus::found, "S = {3}: " + std::string(to_string(found.status)));
    if (found.status == JetWitnessStatus::found) {
      o.require(found.witness[0].entries() == CoeffSequence::Entries{{3, Rational(1)}}, "witness is not a_13 = 1");
      std::vector<TruncatedSeries> phi{psi(found.witness[0])};
      o.require(check_series_solution(gens, phi, 3).ok, "psi(witness) fails the series check");
    }
    auto none = jet_witness_search(gens, SupportTuple{SupportSet({2})}, 2, linear);
    o.require(none.status == JetWitnessStatus::empty && none.method == "linear",
              "S = {2}: " + std::string(to_string(none.status)) + " via " + none.method);
  });

  criterion("P1", "enumerate n = 1, N = 6 (128 subsets)", 1.0, [](Outcome& o) {
    std::vector<TropDiffPolynomial> h{parse_trop_poly("1 (*) x1' (+) 2 (*) x1^(3) (+) 3")};
    o.require(!enumerate_tropical_solutions(h, 1, {6, false}).empty(), "no solutions");
  });

  criterion("P2", "enumerate n = 2, N = 4 (1024 tuples)", 1.0, [](Outcome& o) {
    std::vector<TropDiffPolynomial> h{parse_system_entry("trop(x1' - x2)"), parse_system_entry("trop(x2')")};
    o.require(!enumerate_tropical_solutions(h, 2, {4, false}).empty(), "no solutions");
  });

  criterion("P3", "enumerate at the 2^20 cap (n = 2, N = 9)", 60.0, [](Outcome& o) {
    std::vector<TropDiffPolynomial> h{parse_system_entry("trop(x1'' - t*x2)"),
                                      parse_trop_poly("x1 (*) x2' (+) 1 (*) x1' (+) 2")};
    auto sols = enumerate_tropical_solutions(h, 2, {9, false}, {std::uint64_t{1} << 20, 0});
    o.require(!sols.empty(), "no solutions");
    o.require(sols == oracle::enumerate(h, 2, 9), "differs from the naive scan");
  });

  std::cout << (failures ? std::to_string(failures) + " criterion(s) failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
