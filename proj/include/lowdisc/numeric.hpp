#pragma once

// Arbitrary-precision scalar types and the handful of exact helpers shared by
// every module: floor/ceil of rationals, nearest-integer distance, decimal
// rendering and exact parsing of user-supplied numbers.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace lowdisc {

using Integer = mpz_class;
using Rational = mpq_class;

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Integer square root, floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

/// Fractional part x - floor(x), always in [0, 1).
Rational frac(const Rational& x);

/// Distance from x to the nearest integer, in [0, 1/2].
Rational dist_nearest_int(const Rational& x);

Integer pow10(unsigned digits);

/// Nearest integer to x; exact halves go to the even neighbour.
Integer round_half_even(const Rational& x);

/// Renders an integer count of 10^-digits units ("scaled") as a signed decimal
/// string with exactly `digits` fractional digits.
std::string format_scaled(const Integer& scaled, unsigned digits);

/// x rounded to `digits` fractional digits, round-half-even.
std::string to_decimal(const Rational& x, unsigned digits);

/// x truncated toward minus infinity to `digits` fractional digits.
std::string to_decimal_floor(const Rational& x, unsigned digits);

/// Always "p/q", including q = 1.
std::string to_fraction_string(const Rational& x);

/// Accepts "p", "p/q" and plain decimals such as "-2.125". The value is exact.
/// Throws std::invalid_argument on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

Rational make_rational(const Integer& num, const Integer& den);

}  // namespace lowdisc
