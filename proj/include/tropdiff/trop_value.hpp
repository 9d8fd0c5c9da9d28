#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tropdiff {

/// Element of the min-plus semiring (Z>=0 ∪ {∞}, min, +).
///
/// Default construction yields ∞, the neutral element of ⊕.
class TropValue {
 public:
  constexpr TropValue() noexcept = default;
  constexpr explicit TropValue(std::uint64_t v) noexcept : value_(v) {
    assert(v != kInfinity);
  }

  static constexpr TropValue infinity() noexcept { return TropValue(); }
  static constexpr TropValue zero() noexcept { return TropValue(0); }

  constexpr bool is_infinite() const noexcept { return value_ == kInfinity; }
  constexpr bool is_finite() const noexcept { return value_ != kInfinity; }

  /// Precondition: is_finite().
  constexpr std::uint64_t value() const noexcept {
    assert(is_finite());
    return value_;
  }

  // ∞ compares greater than every finite value.
  constexpr auto operator<=>(const TropValue&) const noexcept = default;

 private:
  static constexpr std::uint64_t kInfinity = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = kInfinity;
};

/// a ⊕ b = min(a, b).
constexpr TropValue trop_add(TropValue a, TropValue b) noexcept { return a < b ? a : b; }

/// a ⊙ b = a + b, ∞ absorbing.
inline TropValue trop_mul(TropValue a, TropValue b) {
  if (a.is_infinite() || b.is_infinite()) return TropValue::infinity();
  std::uint64_t s = 0;
  if (__builtin_add_overflow(a.value(), b.value(), &s) || s == std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("tropical product overflows");
  return TropValue(s);
}

/// a^{⊙k} = k·a, with a^{⊙0} = 0 even for a = ∞.
inline TropValue trop_pow(TropValue a, std::uint64_t k) {
  if (k == 0) return TropValue::zero();
  if (a.is_infinite()) return TropValue::infinity();
  std::uint64_t p = 0;
  if (__builtin_mul_overflow(a.value(), k, &p) || p == std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("tropical power overflows");
  return TropValue(p);
}

inline std::string to_string(TropValue v) {
  return v.is_infinite() ? std::string("inf") : std::to_string(v.value());
}

}  // namespace tropdiff
