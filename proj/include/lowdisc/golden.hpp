#pragma once

#include "lowdisc/numeric.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdisc {

/// An exact element (a + b*sqrt5) / d of Q(sqrt5), kept with gcd(a, b, d) = 1
/// and d > 0. Every comparison is decided with integer arithmetic.
class GoldenNumber {
 public:
  GoldenNumber() : a_(0), b_(0), d_(1) {}
  GoldenNumber(Integer a, Integer b, Integer d);
  explicit GoldenNumber(const Rational& q);
  explicit GoldenNumber(long n) : GoldenNumber(Rational(n)) {}

  static GoldenNumber phi();
  /// (1 - sqrt5) / 2, the algebraic conjugate of phi.
  static GoldenNumber phi_conjugate();
  static GoldenNumber sqrt5();

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& d() const { return d_; }

  bool is_rational() const { return sgn(b_) == 0; }
  Rational rational_part() const;
  Rational irrational_coefficient() const;

  /// -1, 0 or +1.
  int sign() const;

  GoldenNumber operator-() const;
  friend GoldenNumber operator+(const GoldenNumber& x, const GoldenNumber& y);
  friend GoldenNumber operator-(const GoldenNumber& x, const GoldenNumber& y);
  friend GoldenNumber operator*(const GoldenNumber& x, const GoldenNumber& y);
  GoldenNumber& operator+=(const GoldenNumber& y) { return *this = *this + y; }
  GoldenNumber& operator-=(const GoldenNumber& y) { return *this = *this - y; }
  GoldenNumber& operator*=(const GoldenNumber& y) { return *this = *this * y; }

  friend bool operator==(const GoldenNumber& x, const GoldenNumber& y) = default;
  friend std::strong_ordering operator<=>(const GoldenNumber& x, const GoldenNumber& y);

  /// n-digit decimal rendering, round-half-even.
  std::string to_decimal(unsigned digits) const;
  /// "(a + b*sqrt5)/d"
  std::string to_string() const;

 private:
  void canonicalize();

  Integer a_;
  Integer b_;
  Integer d_;
};

/// Sign of a + b*sqrt5.
int sign_of(const Integer& a, const Integer& b);

Integer floor(const GoldenNumber& x);
/// x - floor(x), in [0, 1).
GoldenNumber frac(const GoldenNumber& x);
/// ||x||, in [0, 1/2].
GoldenNumber dist_nearest_int(const GoldenNumber& x);

/// floor(x * 10^digits) / 10^digits.
Rational rational_floor(const GoldenNumber& x, unsigned digits);

/// {phi * k}. Throws std::invalid_argument for k == 0.
GoldenNumber frac_phi_k(std::uint64_t k);

class CertificationError : public std::runtime_error {
 public:
  CertificationError(std::uint64_t start, std::size_t index, std::size_t offset);

  std::uint64_t start() const { return start_; }
  std::size_t index() const { return index_; }
  std::size_t offset() const { return offset_; }

 private:
  std::uint64_t start_;
  std::size_t index_;
  std::size_t offset_;
};

/// Matching of the window {phi*(start + k)}, k = 0..F_i - 1, against the grid
/// {1/F_i, ..., F_i/F_i}.
///
/// The plain rank matching (k-th smallest point to k/F_i) does not always stay
/// within 1/F_i in absolute value: at start = 4, i = 2 the window is
/// {0.472.., 0.090..} and no permutation works. Measured mod 1, a cyclic shift
/// of the rank matching always does, because the window is a rotated copy of
/// the grid perturbed by less than 1/(sqrt5 F_i).
struct SigmaPermutation {
  std::uint64_t start;
  std::size_t index;
  std::uint64_t length;
  /// rank[k] is the 1-based rank of {phi*(start + k)} in the window.
  std::vector<std::uint64_t> rank;
  /// sigma[k] = ((rank[k] - 1 + shift) mod F_i) + 1.
  std::size_t shift = 0;
  std::vector<std::uint64_t> sigma;
  /// max_k ||{phi*(start + k)} - sigma[k]/F_i||, exact.
  GoldenNumber max_deviation;
  /// First k with |{phi*(start + k)} - rank[k]/F_i| > 1/F_i, if any.
  std::optional<std::size_t> plain_rank_violation;
};

/// Builds the shifted rank matching and certifies every deviation (mod 1) is
/// at most 1/F_i. Throws CertificationError naming the first violating offset
/// when no shift achieves that.
SigmaPermutation sigma_permutation(std::uint64_t start, std::size_t index);

}  // namespace lowdisc
