#include "saddle/rational.hpp"

#include <gtest/gtest.h>

#include <cstdint>

namespace saddle {
namespace {

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, 5), Rational(0));
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 6) + Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) - Rational(3, 4), Rational(-1, 4));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_DOUBLE_EQ(Rational(-1, 18).to_double(), -1.0 / 18.0);
}

TEST(Rational, ParseForms) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-3/9"), Rational(-1, 3));
  EXPECT_EQ(Rational::parse("0.75"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-0.1"), Rational(-1, 10));
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
}

TEST(Rational, ToStringRoundTrips) {
  for (const Rational r : {Rational(1, 30), Rational(-13), Rational(7, 4)}) {
    EXPECT_EQ(Rational::parse(r.to_string()), r);
  }
}

TEST(Rational, OverflowIsReported) {
  const Rational big(INT64_MAX);
  EXPECT_THROW(big + Rational(1), std::overflow_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

}  // namespace
}  // namespace saddle
