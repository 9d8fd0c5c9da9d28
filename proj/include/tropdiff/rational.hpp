#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace tropdiff {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational factorial(std::uint64_t k) {
  Integer f = 1;
  for (std::uint64_t i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

// "p/q" or "p"; never "p/1".
inline std::string to_string(const Rational& q) { return q.str(); }

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

}  // namespace tropdiff
