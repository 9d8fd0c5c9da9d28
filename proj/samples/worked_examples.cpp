// Walks through the library on small instances and prints the results.
#include <tropdiff/tropdiff.hpp>

#include <iostream>

using namespace tropdiff;

namespace {

void list(const std::vector<SupportTuple>& tuples) {
  for (const auto& t : tuples) std::cout << "    " << to_string(t) << "\n";
}

}  // namespace

int main() {
  std::cout << "Val_{1,3,4}(2) = " << to_string(val_at(SupportSet({1, 3, 4}), 2))
            << ", Val_{1,3,4}(5) = " << to_string(val_at(SupportSet({1, 3, 4}), 5)) << "\n\n";

  auto fam = parse_family("(a + 5*t + b*t^2, 2 + a*t - 8*t^2 + c*t^3)");
  std::cout << "supports of " << to_string(fam) << ":\n";
  list(trop_of_family(fam, 5).tuples);

  std::vector<TropDiffPolynomial> h{parse_trop_poly("1 (*) x1' (+) 2 (*) x1^(3) (+) 3")};
  auto sols = enumerate_tropical_solutions(h, 1, {5, false});
  std::cout << "\n" << sols.size() << " solutions of " << to_string(h[0]) << " inside {0..5}:\n";
  list(sols);

  // x'' = t, whose solutions are c1 + c2*t + t^3/6.
  auto p = parse_diff_poly("x1'' - t");
  std::vector<TropDiffPolynomial> system{tropicalize(p)};
  std::cout << "\ntrop(" << to_string(p) << ") = " << to_string(system[0]) << ": "
            << enumerate_tropical_solutions(system, 1, {4, false}).size() << " solutions in {0..4}\n";
  system.push_back(tropicalize(derive_poly(p, 2)));
  std::cout << "with trop(d^2 P) = " << to_string(system[1]) << ":\n";
  list(enumerate_tropical_solutions(system, 1, {4, false}));

  std::vector<DiffPolynomial> gens{p};
  auto family = parse_family("c1 + c2*t + 1/6*t^3");
  for (std::uint64_t k : {0u, 2u}) {
    auto report = verify_fundamental_theorem(gens, family, {4, false}, k);
    std::cout << "depth " << k << ": " << report.verdict() << "\n";
  }

  JetSearchOptions linear;
  linear.strategy = JetStrategy::linear;
  for (std::uint64_t e : {2u, 3u}) {
    SupportTuple s{SupportSet({e})};
    auto r = jet_witness_search(gens, s, 2, linear);
    std::cout << "jet witness for " << to_string(s) << ": " << to_string(r.status);
    if (r.status == JetWitnessStatus::found) std::cout << ", series " << to_string(psi(r.witness[0]));
    std::cout << "\n";
  }
}
