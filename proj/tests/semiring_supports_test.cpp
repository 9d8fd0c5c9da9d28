#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace tropdiff;

namespace {

const TropValue inf = TropValue::infinity();
TropValue v(std::uint64_t x) { return TropValue(x); }

TEST(TropValue, AddIsMin) {
  EXPECT_EQ(trop_add(v(1), v(3)), v(1));
  EXPECT_EQ(trop_add(inf, v(5)), v(5));
  EXPECT_EQ(trop_add(v(2), v(2)), v(2));
}

TEST(TropValue, MulIsPlus) {
  EXPECT_EQ(trop_mul(v(1), v(3)), v(4));
  EXPECT_EQ(trop_mul(inf, v(5)), inf);
  EXPECT_EQ(trop_mul(v(0), v(7)), v(7));
}

TEST(TropValue, PowerConventions) {
  EXPECT_EQ(trop_pow(inf, 0), v(0));
  EXPECT_EQ(trop_pow(inf, 2), inf);
  EXPECT_EQ(trop_pow(v(3), 4), v(12));
}

TEST(TropValue, SemiringLaws) {
  gen::Random r(11);
  for (int i = 0; i < 2000; ++i) {
    auto a = r.trop_value(), b = r.trop_value(), c = r.trop_value();
    EXPECT_EQ(trop_add(a, trop_add(b, c)), trop_add(trop_add(a, b), c));
    EXPECT_EQ(trop_mul(a, trop_mul(b, c)), trop_mul(trop_mul(a, b), c));
    EXPECT_EQ(trop_add(a, b), trop_add(b, a));
    EXPECT_EQ(trop_mul(a, b), trop_mul(b, a));
    EXPECT_EQ(trop_mul(a, trop_add(b, c)), trop_add(trop_mul(a, b), trop_mul(a, c)));
    EXPECT_EQ(trop_add(a, a), a);
    EXPECT_EQ(trop_add(a, inf), a);
    EXPECT_EQ(trop_mul(a, v(0)), a);
  }
}

TEST(SupportSet, CanonicalForm) {
  SupportSet s({3, 1, 3, 0});
  EXPECT_EQ(s.finite_part(), (std::vector<std::uint64_t>{0, 1, 3}));
  SupportSet t({2, 3, 7, 9}, 6);
  EXPECT_EQ(t.finite_part(), (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(t.tail_from(), 6u);
  // {2,3} ∪ [4,∞) is [2,∞)
  EXPECT_EQ(SupportSet({2, 3}, 4), SupportSet::tail(2));
  EXPECT_TRUE(SupportSet().empty());
}

TEST(ValAt, Examples) {
  SupportSet s({1, 3, 4});
  EXPECT_EQ(val_at(s, 2), v(1));
  EXPECT_EQ(val_at(s, 5), inf);
  SupportSet tailed({0}, 4);
  ASSERT_EQ(oracle::val(tailed, 2), 2u);
  EXPECT_EQ(val_at(tailed, 2), v(2));
  EXPECT_EQ(val_at(tailed, 9), v(0));
}

TEST(ValAt, EmptySetIsInfinite) {
  for (std::uint64_t j = 0; j < 10; ++j) EXPECT_EQ(val_at(SupportSet(), j), inf);
}

TEST(ShiftSupport, Examples) {
  EXPECT_EQ(shift_support(SupportSet({0, 1, 3}), 2), SupportSet({1}));
  EXPECT_EQ(shift_support(SupportSet({0, 3}), 0), SupportSet({0, 3}));
  EXPECT_EQ(shift_support(SupportSet({2, 3}, 6), 3), SupportSet({0}, 3));
}

TEST(RestrictToWindow, Examples) {
  EXPECT_EQ(restrict_to_window(SupportSet({1, 3, 4}), 3), SupportSet({1, 3}));
  EXPECT_EQ(restrict_to_window(SupportSet::tail(2), 4), SupportSet({2, 3, 4}));
  EXPECT_EQ(restrict_to_window(SupportSet(), 10), SupportSet());
}

TEST(SupportSet, ValShiftCompatibility) {
  gen::Random r(12);
  for (int i = 0; i < 2000; ++i) {
    auto s = r.support();
    auto j = static_cast<std::uint64_t>(r.integer(0, 10));
    auto k = static_cast<std::uint64_t>(r.integer(0, 10));
    auto lhs = val_at(shift_support(s, j), k);
    auto rhs = val_at(s, j + k);
    EXPECT_EQ(lhs, rhs) << to_string(s) << " j=" << j << " k=" << k;

    auto o = oracle::val(s, k);
    EXPECT_EQ(val_at(s, k), o ? TropValue(*o) : inf);
    EXPECT_EQ(val_at(s, k) == v(0), s.contains(k));

    auto shifted = shift_support(s, j);
    for (std::uint64_t x = 0; x < 20; ++x)
      EXPECT_EQ(shifted.contains(x), oracle::member(s.finite_part(), s.tail_from(), x + j));
  }
}

}  // namespace
