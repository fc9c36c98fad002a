#include "lowdisc/numeric.hpp"

#include <gtest/gtest.h>

using namespace lowdisc;

TEST(Numeric, FloorAndCeilOfNegatives) {
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(floor(Rational(-4)), -4);
}

TEST(Numeric, FracAndNearestIntegerDistance) {
  EXPECT_EQ(frac(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(dist_nearest_int(Rational(-1, 3)), Rational(1, 3));
  EXPECT_EQ(dist_nearest_int(Rational(5, 2)), Rational(1, 2));
  EXPECT_EQ(dist_nearest_int(Rational(9, 10)), Rational(1, 10));
}

TEST(Numeric, RoundHalfEven) {
  EXPECT_EQ(round_half_even(Rational(5, 2)), 2);
  EXPECT_EQ(round_half_even(Rational(7, 2)), 4);
  EXPECT_EQ(round_half_even(Rational(-5, 2)), -2);
  EXPECT_EQ(round_half_even(Rational(-7, 2)), -4);
  EXPECT_EQ(round_half_even(Rational(26, 10)), 3);
}

TEST(Numeric, DecimalRendering) {
  EXPECT_EQ(to_decimal(Rational(1, 3), 5), "0.33333");
  EXPECT_EQ(to_decimal(Rational(2, 3), 5), "0.66667");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2), "-0.12");  // -12.5 -> -12
  EXPECT_EQ(to_decimal(Rational(3, 8), 2), "0.38");    // 37.5 -> 38
  EXPECT_EQ(to_decimal(Rational(12345, 100), 0), "123");
  EXPECT_EQ(to_decimal_floor(Rational(-1, 3), 3), "-0.334");
  EXPECT_EQ(to_decimal(Rational(7), 3), "7.000");
}

TEST(Numeric, FractionStringAlwaysHasDenominator) {
  EXPECT_EQ(to_fraction_string(Rational(2)), "2/1");
  EXPECT_EQ(to_fraction_string(Rational(-6, 4)), "-3/2");
}

TEST(Numeric, ParseRationalForms) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("2.125"), Rational(17, 8));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_rational(".25"), Rational(1, 4));
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
}

TEST(Numeric, IntegerSquareRoot) {
  EXPECT_EQ(isqrt(Integer(80)), 8);
  EXPECT_EQ(isqrt(Integer(81)), 9);
  EXPECT_THROW(isqrt(Integer(-1)), std::domain_error);
}
