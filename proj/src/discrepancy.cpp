#include "lowdisc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace lowdisc {

PointSet::PointSet(std::vector<Rational> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("point set is empty");
  }
  for (auto& p : points_) {
    p.canonicalize();
    if (sgn(p) < 0 || p >= 1) {
      throw std::invalid_argument("point " + to_fraction_string(p) + " is outside [0,1)");
    }
  }
}

DiscrepancyReport discrepancy_sorted(std::span<const Rational> sorted) {
  DiscrepancyReport report;
  report.count = sorted.size();
  const Rational n(static_cast<unsigned long>(sorted.size()));
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    const Rational scaled = n * sorted[i - 1];
    // Reached at gamma = x_(i) (count >= i there).
    Rational below = Rational(static_cast<unsigned long>(i)) - scaled;
    if (below > report.value) {
      report.value = below;
      report.gamma = sorted[i - 1];
      report.left_limit = false;
    }
    // Approached as gamma -> x_(i) from the left (count i - 1).
    Rational above = scaled - Rational(static_cast<unsigned long>(i - 1));
    if (above > report.value) {
      report.value = above;
      report.gamma = sorted[i - 1];
      report.left_limit = true;
    }
  }
  return report;
}

DiscrepancyReport exact_discrepancy(const PointSet& ps) {
  std::vector<Rational> sorted = ps.points();
  std::sort(sorted.begin(), sorted.end());
  return discrepancy_sorted(sorted);
}

Rational brute_force_discrepancy(const PointSet& ps) {
  const auto& xs = ps.points();
  const Rational n(static_cast<unsigned long>(xs.size()));
  auto count_if = [&](auto pred) {
    return Rational(static_cast<unsigned long>(std::count_if(xs.begin(), xs.end(), pred)));
  };
  auto consider = [](Rational& best, Rational v) {
    if (sgn(v) < 0) {
      v = -v;
    }
    if (v > best) {
      best = std::move(v);
    }
  };

  Rational best = 0;
  consider(best, -count_if([](const Rational& x) { return sgn(x) <= 0; }));
  for (const auto& g : xs) {
    consider(best, n * g - count_if([&](const Rational& x) { return x <= g; }));
    if (sgn(g) > 0) {
      consider(best, n * g - count_if([&](const Rational& x) { return x < g; }));
    }
  }
  // gamma -> 1 from the left: N - N.
  return best;
}

namespace {

DiscrepancyReport range_discrepancy(const AlphaApprox& state, std::uint64_t first,
                                    std::uint64_t last) {
  if (first < 1 || last > state.stage() || first > last) {
    throw std::out_of_range("range " + std::to_string(first) + ".." + std::to_string(last) +
                            " is not inside stages 1.." + std::to_string(state.stage()));
  }
  std::vector<Rational> values;
  values.reserve(last - first + 1);
  bool wrap = false;
  for (std::uint64_t k = first; k <= last; ++k) {
    PointEstimate est = point(state, k);
    wrap = wrap || est.wrap_risk;
    values.push_back(std::move(est.value));
  }
  DiscrepancyReport report = exact_discrepancy(PointSet(std::move(values)));
  report.wrap_risk = wrap;
  return report;
}

}  // namespace

DiscrepancyReport segment_discrepancy(const AlphaApprox& state, const Block& block) {
  return range_discrepancy(state, block.start, block.last());
}

DiscrepancyReport prefix_discrepancy(const AlphaApprox& state, std::uint64_t prefix_size) {
  return range_discrepancy(state, 1, prefix_size);
}

std::vector<SeriesRow> dn_series(std::span<const Rational> points) {
  std::vector<SeriesRow> rows;
  rows.reserve(points.size());
  std::vector<Rational> sorted;
  sorted.reserve(points.size());
  for (const auto& p : points) {
    if (sgn(p) < 0 || p >= 1) {
      throw std::invalid_argument("point " + to_fraction_string(p) + " is outside [0,1)");
    }
    sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), p), p);
    rows.push_back({sorted.size(), discrepancy_sorted(sorted).value, false});
  }
  return rows;
}

std::vector<SeriesRow> dn_series(const AlphaApprox& state, std::size_t n_max) {
  if (n_max > state.stage()) {
    throw std::out_of_range("n_max exceeds the constructed stage");
  }
  std::vector<Rational> values;
  std::vector<bool> wraps;
  values.reserve(n_max);
  for (std::size_t k = 1; k <= n_max; ++k) {
    PointEstimate est = point(state, k);
    wraps.push_back(est.wrap_risk);
    values.push_back(std::move(est.value));
  }
  std::vector<SeriesRow> rows = dn_series(values);
  bool wrap = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    wrap = wrap || wraps[i];
    rows[i].wrap_risk = wrap;
  }
  return rows;
}

double log_ratio(const SeriesRow& row) {
  if (row.n <= 1) {
    return std::numeric_limits<double>::infinity();
  }
  return row.d.get_d() / std::log(static_cast<double>(row.n));
}

std::string csv_header() { return "N,D_N,D_N_decimal,ln_N,ratio"; }

std::string csv_row(const SeriesRow& row) {
  char ln_buf[64];
  std::snprintf(ln_buf, sizeof ln_buf, "%.12f", std::log(static_cast<double>(row.n)));
  std::string ratio = "inf";
  if (row.n > 1) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", log_ratio(row));
    ratio = buf;
  }
  return std::to_string(row.n) + "," + to_fraction_string(row.d) + "," + to_decimal(row.d, 12) +
         "," + ln_buf + "," + ratio;
}

}  // namespace lowdisc
