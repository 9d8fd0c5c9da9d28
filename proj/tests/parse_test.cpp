#include "generators.hpp"

#include <gtest/gtest.h>

using namespace tropdiff;

namespace {

TEST(ParseSeries, Forms) {
  auto s = parse_series("2 + 1/6*t^3");
  EXPECT_TRUE(s.is_exact());
  EXPECT_EQ(s.coefficient(0), 2);
  EXPECT_EQ(s.coefficient(3), Rational(1, 6));

  auto tr = parse_series("t - t^2 ; O(t^5)");
  ASSERT_TRUE(tr.precision());
  EXPECT_EQ(*tr.precision(), 5u);
  EXPECT_EQ(tr.coefficient(2), -1);

  EXPECT_EQ(parse_series("(1 + t)^2"), parse_series("1 + 2*t + t^2"));
  EXPECT_EQ(parse_series("t^2 / 4"), parse_series("1/4*t^2"));
  EXPECT_TRUE(parse_series("0").is_exact_zero());
  EXPECT_TRUE(parse_series("t - t").is_exact_zero());
}

TEST(ParseSeries, Rejections) {
  EXPECT_THROW(parse_series("x1"), parse_error);
  EXPECT_THROW(parse_series("1/t"), parse_error);
  EXPECT_THROW(parse_series("t/0"), parse_error);
  EXPECT_THROW(parse_series("2 +"), parse_error);
  EXPECT_THROW(parse_series("t^-1"), parse_error);
}

TEST(ParseDiffPoly, Derivatives) {
  auto p = parse_diff_poly("x1'' - t");
  EXPECT_EQ(p.n(), 1u);
  EXPECT_EQ(p.order(), 2u);
  EXPECT_EQ(parse_diff_poly("x^(2)"), parse_diff_poly("x1''"));
  EXPECT_EQ(parse_diff_poly("x1^2"), parse_diff_poly("x1*x1"));
  EXPECT_EQ(parse_diff_poly("x2' + x1").n(), 2u);
  EXPECT_EQ(parse_diff_poly("x1", 3).n(), 3u);
  EXPECT_EQ(parse_diff_poly("(1+t)*x1'"), parse_diff_poly("x1' + t*x1'"));
}

TEST(ParseDiffPoly, RejectsParameters) {
  EXPECT_THROW(parse_diff_poly("c*x1"), parse_error);
  EXPECT_THROW(parse_diff_poly("x0"), parse_error);
}

TEST(ParseTropPoly, Forms) {
  auto p = parse_trop_poly("1 (*) x1' (+) 2 (*) x1^(3) (+) 3");
  EXPECT_EQ(p.terms().size(), 3u);
  EXPECT_EQ(p.order(), 3u);
  EXPECT_TRUE(parse_trop_poly("inf").terms().empty());
  auto q = parse_trop_poly("x1 (+) 2 (*) x1 (+) 0");
  EXPECT_EQ(q.terms().size(), 2u);
  EXPECT_EQ(q.terms().at(ExponentMatrix(1).with_exponent({1, 0}, 1)), 0u);
  auto pow = parse_trop_poly("x1'^3");
  EXPECT_EQ(pow.terms().begin()->first.total_degree(), 3u);
  EXPECT_EQ(parse_system_entry("trop(x1'' - t)"), parse_trop_poly("x1'' (+) 1"));
}

TEST(ParseSupport, Forms) {
  EXPECT_EQ(parse_support_set("{0,1,3}"), SupportSet({0, 1, 3}));
  EXPECT_EQ(parse_support_set("{}"), SupportSet(std::vector<std::uint64_t>{}));
  EXPECT_EQ(parse_support_set("{2,3,...6}"), SupportSet({2, 3}, 6));
  EXPECT_EQ(parse_support_set("{...4}"), SupportSet::tail(4));
  EXPECT_EQ(parse_support_set("{3, 1, 1}"), SupportSet({1, 3}));
  auto t = parse_support_tuple("({0}, {1,...3})");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1], SupportSet({1}, 3));
  EXPECT_THROW(parse_support_set("{1,,2}"), parse_error);
  EXPECT_THROW(parse_support_set("{1"), parse_error);
}

TEST(ParseFamily, Parameters) {
  auto fam = parse_family("(a + 5*t + b*t^2, 2 + a*t - 8*t^2 + c*t^3)");
  EXPECT_EQ(fam.n(), 2u);
  EXPECT_EQ(fam.params, (std::vector<std::string>{"a", "b", "c"}));
  auto phi = fam.evaluate({Rational(1), Rational(0), Rational(2)});
  EXPECT_EQ(phi[0], parse_series("1 + 5*t"));
  EXPECT_EQ(phi[1], parse_series("2 + t - 8*t^2 + 2*t^3"));
  EXPECT_THROW(parse_family("a*x1"), parse_error);
}

TEST(ParseErrors, Location) {
  try {
    parse_diff_poly("x1 + * x1'");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 6u);
    EXPECT_FALSE(e.expected().empty());
    EXPECT_NE(std::string(e.what()).find("1:6:"), std::string::npos);
  }
  try {
    parse_series("1 +\n  t^");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GE(e.column(), 4u);
  }
  try {
    parse_series("1 $ t");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(ParseDispatch, Kinds) {
  auto in = parse("{0,2}", InputKind::support_set);
  EXPECT_EQ(std::get<SupportSet>(in.payload), SupportSet({0, 2}));
  EXPECT_EQ(in.span.end, 5u);
  EXPECT_TRUE(std::holds_alternative<SolutionFamily>(parse("c + t", InputKind::family).payload));
}

// Printing then parsing gives back the same object.
TEST(RoundTrip, Series) {
  gen::Random r(61);
  for (int i = 0; i < 500; ++i) {
    auto s = r.series(6);
    EXPECT_EQ(parse_series(to_string(s)), s) << to_string(s);
  }
}

TEST(RoundTrip, DiffPoly) {
  gen::Random r(62);
  for (int i = 0; i < 400; ++i) {
    auto n = static_cast<std::size_t>(r.integer(1, 3));
    auto p = r.diff_poly(n, 4, 3, 4);
    EXPECT_EQ(parse_diff_poly(to_string(p), n), p) << to_string(p);
  }
}

TEST(RoundTrip, TropPoly) {
  gen::Random r(63);
  for (int i = 0; i < 400; ++i) {
    auto n = static_cast<std::size_t>(r.integer(1, 3));
    auto p = r.trop_poly(n, 4, 3, 4);
    EXPECT_EQ(parse_trop_poly(to_string(p), n), p) << to_string(p);
  }
}

TEST(RoundTrip, Supports) {
  gen::Random r(64);
  for (int i = 0; i < 500; ++i) {
    auto s = r.support(9);
    EXPECT_EQ(parse_support_set(to_string(s)), s) << to_string(s);
    SupportTuple t{s, r.support(4)};
    EXPECT_EQ(parse_support_tuple(to_string(t)), t) << to_string(t);
  }
}

TEST(RoundTrip, Family) {
  for (const char* text : {"c1 + c2*t + 1/6*t^3", "(a + 5*t + b*t^2, 2 + a*t - 8*t^2 + c*t^3)", "3 - t^2",
                           "(a + b*t, b)", "a^2*t - 2*a*b + 1/3*t^4"}) {
    auto fam = parse_family(text);
    auto again = parse_family(to_string(fam));
    EXPECT_EQ(again.params, fam.params) << text;
    EXPECT_EQ(again.components, fam.components) << text;
  }
}

}  // namespace
