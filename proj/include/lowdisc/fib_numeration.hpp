#pragma once

// Fibonacci numeration with the indexing F_0 = F_1 = 1, F_{i+1} = F_i + F_{i-1},
// so F_2 = 2, F_3 = 3, F_4 = 5, ...
//
// Digit strings are stored least-significant first: element 0 is the digit of
// F_1, element 1 the digit of F_2 and so on. Positions in the public API are
// 1-based to match that weight index.

#include "lowdisc/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lowdisc {

using DigitString = std::vector<int>;

/// F_i as an arbitrary-precision integer.
Integer fib(std::size_t i);

/// F_i for i <= 91, the range that fits in 64 bits.
std::uint64_t fib_u64(std::size_t i);

/// Sum of digits[p-1] * F_p. Digits may be any integers.
Integer digit_value(const DigitString& digits);

/// Largest r with phi^(r-1) <= n, i.e. floor(1 + log_phi n). Decided exactly.
std::size_t length_bound(std::uint64_t n);

/// Binary Fibonacci digits with no two adjacent ones and a nonzero top digit.
struct ZeckDigits {
  DigitString digits;

  std::uint64_t value() const;
  std::size_t length() const { return digits.size(); }
  std::string to_string() const;  // most significant first, e.g. "101"
};

/// Representation with every digit positive: b_1 in {1,2,3}, b_i in {1,2}.
struct FibDigits {
  DigitString digits;

  std::uint64_t value() const;
  std::size_t length() const { return digits.size(); }
  std::string to_string() const;  // "(b_1,b_2,...)"
};

ZeckDigits zeckendorf(std::uint64_t n);

/// Rewrites (0,0,1) at positions pos, pos+1, pos+2 into (1,1,0).
/// Throws std::invalid_argument when the pattern is absent.
DigitString apply_procedure1(DigitString digits, std::size_t pos);

/// Rewrites (a, 0, c) at positions pos-1, pos, pos+1 into (a+1, 1, c-1); needs
/// pos >= 2 and c >= 1. Throws std::invalid_argument otherwise.
DigitString apply_procedure2(DigitString digits, std::size_t pos);

/// One step of the positive-representation algorithm, kept for tracing.
struct RewriteStep {
  enum class Kind { procedure1, leading_pair, procedure2, trim };
  Kind kind;
  std::size_t position;
  DigitString after;
};

std::string to_string(RewriteStep::Kind kind);

struct PositiveRepTrace {
  ZeckDigits zeckendorf;
  std::vector<RewriteStep> steps;
  FibDigits result;
};

/// Zeckendorf digits, then Procedure 1 sweeps, the (0,1) -> (2,0) fix at the
/// bottom, then migration of the lowest zero with Procedure 2 and Procedure 1
/// clean-up. Throws std::invalid_argument for n == 0.
PositiveRepTrace to_positive_rep_traced(std::uint64_t n);
FibDigits to_positive_rep(std::uint64_t n);

/// Copy j of a run of F_i consecutive integers {start, ..., start + length - 1}.
struct Block {
  std::size_t index;
  std::size_t copy;
  std::uint64_t start;
  std::uint64_t length;

  std::uint64_t last() const { return start + length - 1; }
};

/// {1..n} = {1..prefix_size} followed by blocks in increasing index order.
struct SegmentPartition {
  std::uint64_t n = 0;
  std::uint64_t prefix_size = 0;
  std::vector<Block> blocks;

  std::size_t distinct_indices() const;
};

SegmentPartition partition(std::uint64_t n);

}  // namespace lowdisc
