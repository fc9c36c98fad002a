#pragma once

// Unnormalized discrepancy
//   D_N = sup_{gamma in [0,1)} | N*gamma - #{ j : x_j <= gamma } |
// of a finite multiset of exact rationals in [0, 1).

#include "lowdisc/alpha.hpp"
#include "lowdisc/fib_numeration.hpp"
#include "lowdisc/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lowdisc {

class PointSet {
 public:
  /// Throws std::invalid_argument when empty or when a point is outside [0, 1).
  explicit PointSet(std::vector<Rational> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<Rational>& points() const { return points_; }

 private:
  std::vector<Rational> points_;
};

struct DiscrepancyReport {
  Rational value;
  /// Threshold at which the supremum is reached, or approached from the left
  /// when `left_limit` is set.
  Rational gamma;
  bool left_limit = false;
  std::size_t count = 0;
  /// Set when any contributing point had an unresolved fractional-part wrap.
  bool wrap_risk = false;
};

/// Closed form over the order statistics x_(1) <= ... <= x_(N):
///   D_N = max_i max(i - N x_(i), N x_(i) - (i - 1)).
DiscrepancyReport exact_discrepancy(const PointSet& ps);

/// Same closed form for already sorted input. Does not validate.
DiscrepancyReport discrepancy_sorted(std::span<const Rational> sorted);

/// Evaluates |N*gamma - count| at gamma = 0, at every point and at every left
/// limit x^-, counting directly. O(N^2).
Rational brute_force_discrepancy(const PointSet& ps);

/// D over {alpha n_k} for k in the block's range, using point() values.
/// Throws std::out_of_range when the block runs past the constructed stage.
DiscrepancyReport segment_discrepancy(const AlphaApprox& state, const Block& block);

/// Same for the prefix {1..prefix_size} of a partition.
DiscrepancyReport prefix_discrepancy(const AlphaApprox& state, std::uint64_t prefix_size);

struct SeriesRow {
  std::size_t n;
  Rational d;
  bool wrap_risk = false;
};

/// D_N for every N = 1..points.size(), maintaining the sorted prefix.
std::vector<SeriesRow> dn_series(std::span<const Rational> points);

/// D_N for the points {alpha n_k}, N = 1..n_max. Throws std::out_of_range when
/// n_max exceeds the stage.
std::vector<SeriesRow> dn_series(const AlphaApprox& state, std::size_t n_max);

/// "N,D_N,D_N_decimal,ln_N,ratio" header and rows: D_N as p/q, D_N with 12
/// decimals, ln N and D_N/ln N with 12 significant decimals ("inf" at N = 1).
std::string csv_header();
std::string csv_row(const SeriesRow& row);

/// D_N / ln N as a double; +inf at N = 1.
double log_ratio(const SeriesRow& row);

}  // namespace lowdisc
