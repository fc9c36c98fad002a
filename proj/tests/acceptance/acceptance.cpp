// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is nonzero when any criterion's outcome differs from the
// expectation pinned in kExpectedFailures (an unexpected failure, or an
// expected failure that starts passing).

#include "commands.hpp"
#include "lowdisc/alpha.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/fib_numeration.hpp"
#include "lowdisc/golden.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace lowdisc;

namespace {

// Regression bound for D_N / ln N and per-block D, from the first certified
// run (max ratio 0.766 at N = 152, max block D 1.336).
const Rational kGrowthBound(3, 2);

constexpr std::uint64_t kRepLimit = 100000;
constexpr std::uint64_t kPartitionLimit = 10000;
constexpr std::size_t kGoldenMaxIndex = 30;
constexpr std::size_t kSigmaMaxIndex = 12;
constexpr std::uint64_t kSigmaSpan = 50;
constexpr std::uint64_t kConstructStages = 200;
constexpr int kOracleTrials = 10000;
constexpr std::size_t kOracleMaxPoints = 50;
constexpr std::size_t kSeriesMax = 300;
constexpr std::uint64_t kSeed = 20130101;

// The plain rank matching leaves the 1/F_i band for some windows, e.g.
// R = 4, i = 2: {4 phi} = 0.472.., {5 phi} = 0.090.. against the grid {1/2, 1}.
const std::set<int> kExpectedFailures = {4};

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome positive_representations() {
  for (std::uint64_t n = 1; n <= kRepLimit; ++n) {
    const FibDigits rep = to_positive_rep(n);
    if (rep.value() != n) {
      return {false, "value mismatch at N = " + std::to_string(n)};
    }
    const auto& d = rep.digits;
    bool digits_ok = d[0] >= 1 && d[0] <= 3;
    for (std::size_t i = 1; i < d.size(); ++i) {
      digits_ok = digits_ok && d[i] >= 1 && d[i] <= 2;
    }
    if (!digits_ok) {
      return {false, "digit bound fails at N = " + std::to_string(n) + ": " + rep.to_string()};
    }
    if (rep.length() > length_bound(n)) {
      return {false, "length bound fails at N = " + std::to_string(n)};
    }
  }
  return {true, "N = 1.." + std::to_string(kRepLimit)};
}

Outcome partitions() {
  std::vector<std::uint64_t> seen(kPartitionLimit + 1, 0);
  for (std::uint64_t n = 1; n <= kPartitionLimit; ++n) {
    const SegmentPartition part = partition(n);
    std::uint64_t covered = part.prefix_size;
    for (std::uint64_t x = 1; x <= part.prefix_size; ++x) {
      seen[x] = n;
    }
    for (const Block& b : part.blocks) {
      if (b.start < fib_u64(b.index)) {
        return {false, "R < F_i at N = " + std::to_string(n)};
      }
      if (b.length != fib_u64(b.index) || b.last() > n) {
        return {false, "bad block at N = " + std::to_string(n)};
      }
      for (std::uint64_t x = b.start; x <= b.last(); ++x) {
        if (seen[x] == n) {
          return {false, "overlap at N = " + std::to_string(n)};
        }
        seen[x] = n;
      }
      covered += b.length;
    }
    if (covered != n) {
      return {false, "cover fails at N = " + std::to_string(n)};
    }
  }
  return {true, "N = 1.." + std::to_string(kPartitionLimit)};
}

Outcome golden_inequality() {
  GoldenNumber worst;
  for (std::size_t i = 1; i <= kGoldenMaxIndex; ++i) {
    const GoldenNumber f(Rational(fib(i)));
    const GoldenNumber scaled = dist_nearest_int(GoldenNumber::phi() * f) * f;
    if (scaled > GoldenNumber(1)) {
      return {false, "fails at i = " + std::to_string(i)};
    }
    worst = std::max(worst, scaled);
  }
  return {true, "i = 1.." + std::to_string(kGoldenMaxIndex) + ", max F_i ||phi F_i|| = " +
                    worst.to_decimal(6)};
}

Outcome plain_rank_matching(std::string& shifted_detail) {
  std::size_t windows = 0;
  std::size_t violations = 0;
  std::string first;
  std::size_t shifted_ok = 0;
  for (std::size_t i = 1; i <= kSigmaMaxIndex; ++i) {
    const std::uint64_t f = fib_u64(i);
    for (std::uint64_t r = f; r <= f + kSigmaSpan; ++r) {
      ++windows;
      try {
        const SigmaPermutation s = sigma_permutation(r, i);
        ++shifted_ok;
        if (s.plain_rank_violation) {
          if (violations++ == 0) {
            first = "R = " + std::to_string(r) + ", i = " + std::to_string(i);
          }
        }
      } catch (const CertificationError& e) {
        shifted_detail = e.what();
        return {false, "certification error: " + std::string(e.what())};
      }
    }
  }
  shifted_detail = std::to_string(shifted_ok) + "/" + std::to_string(windows) +
                   " windows within 1/F_i mod 1 after a cyclic shift of the ranks";
  if (violations) {
    return {false, std::to_string(violations) + "/" + std::to_string(windows) +
                       " windows exceed 1/F_i under the plain rank matching; first at " + first};
  }
  return {true, std::to_string(windows) + " windows"};
}

Outcome nested_construction() {
  const GrowthSequence seq = GrowthSequence::factorial();
  const CBound bound = min_c(*seq.declared_kappa());
  const Rational c = default_c(bound);
  AlphaApprox state = [&] {
    try {
      return construct_alpha(seq, golden_targets(), kConstructStages, c,
                             ConstructOptions{bound.start_stage});
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("construction failed: ") + e.what());
    }
  }();
  const auto& h = state.history();
  for (std::size_t j = 1; j < h.size(); ++j) {
    if (h[j].lo < h[j - 1].lo || h[j].hi > h[j - 1].hi) {
      return {false, "intervals not nested at k = " + std::to_string(h[j].k)};
    }
  }
  if (auto k = find_target_violation(state)) {
    return {false, "||mid n_k - target_k|| > c/k at k = " + std::to_string(*k)};
  }
  return {true, "c = " + to_fraction_string(c) + ", K = " + std::to_string(state.stage()) +
                    ", " + std::to_string(certified_digits(state)) + " certified digits"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::size_t> size(1, kOracleMaxPoints);
  std::uniform_int_distribution<long> den_small(1, 30);
  std::uniform_int_distribution<long> den_large(1, 1000000);
  for (int t = 0; t < kOracleTrials; ++t) {
    // Half the sets use small denominators so ties and repeats are common.
    const long q = (t % 2) ? den_small(rng) : den_large(rng);
    std::uniform_int_distribution<long> num(0, q - 1);
    std::vector<Rational> pts;
    const std::size_t n = size(rng);
    for (std::size_t j = 0; j < n; ++j) {
      pts.emplace_back(num(rng), q);
      pts.back().canonicalize();
    }
    const PointSet ps(std::move(pts));
    if (exact_discrepancy(ps).value != brute_force_discrepancy(ps)) {
      return {false, "mismatch on trial " + std::to_string(t)};
    }
  }
  return {true, std::to_string(kOracleTrials) + " random sets, N <= " +
                    std::to_string(kOracleMaxPoints)};
}

Outcome growth_law() {
  const Rational c = default_c(min_c(Rational(1)));
  const AlphaApprox state =
      construct_alpha(GrowthSequence::factorial(), golden_targets(), kSeriesMax, c);
  const auto rows = dn_series(state, kSeriesMax);

  double max_ratio = 0;
  std::size_t argmax = 0;
  for (const auto& row : rows) {
    if (row.n >= 10 && log_ratio(row) > max_ratio) {
      max_ratio = log_ratio(row);
      argmax = row.n;
    }
  }
  const double b = kGrowthBound.get_d();
  for (const auto& row : rows) {
    if (row.n >= 10 && log_ratio(row) > b) {
      return {false, "D_N/ln N = " + std::to_string(log_ratio(row)) + " > B at N = " +
                         std::to_string(row.n)};
    }
  }

  const SegmentPartition part = partition(kSeriesMax);
  Rational block_sum = prefix_discrepancy(state, part.prefix_size).value;
  Rational block_max = block_sum;
  for (const Block& blk : part.blocks) {
    const Rational d = segment_discrepancy(state, blk).value;
    block_sum += d;
    block_max = std::max(block_max, d);
  }
  if (block_max > kGrowthBound) {
    return {false, "block discrepancy " + to_decimal(block_max, 6) + " > B"};
  }
  const Rational total = rows.back().d;
  if (block_sum < total) {
    return {false, "block sum " + to_decimal(block_sum, 6) + " < D_N " + to_decimal(total, 6)};
  }

  const AlphaApprox zero = construct_alpha(GrowthSequence::factorial(), zero_targets(), kSeriesMax, c);
  for (const auto& row : dn_series(zero, kSeriesMax)) {
    if (row.d != Rational(static_cast<long>(row.n))) {
      return {false, "alpha = 0 control: D_N != N at N = " + std::to_string(row.n)};
    }
  }
  if (!(log_ratio(SeriesRow{kSeriesMax, Rational(static_cast<long>(kSeriesMax)), false}) > b)) {
    return {false, "alpha = 0 control does not exceed B"};
  }

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "B = %s; max D_N/ln N = %.6f at N = %zu; max block D = %s over %zu segments; "
                "block sum %s >= D_%zu = %s; alpha = 0 gives D_N = N",
                to_fraction_string(kGrowthBound).c_str(), max_ratio, argmax,
                to_decimal(block_max, 6).c_str(), part.blocks.size() + 1,
                to_decimal(block_sum, 3).c_str(), kSeriesMax, to_decimal(total, 3).c_str());
  return {true, buf};
}

Outcome inadmissibility_guard() {
  const GrowthReport report = check_growth(GrowthSequence::geometric(2), kConstructStages);
  if (report.admissible) {
    return {false, "2^k accepted by check_growth"};
  }
  std::string a0 = "lowdisc", a1 = "construct", a2 = "--sequence", a3 = "pow2";
  char* argv[] = {a0.data(), a1.data(), a2.data(), a3.data()};
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(4, argv, out, err);
  if (code != cli::kInadmissible) {
    return {false, "construct --sequence pow2 exited " + std::to_string(code)};
  }
  return {true, "min ratio " + to_fraction_string(report.min_ratio) + ", exit code " +
                    std::to_string(code)};
}

}  // namespace

int main() {
  int unexpected = 0;
  std::string shifted_detail;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"positive Fibonacci representations", positive_representations},
      {"partition cover and R >= F_i", partitions},
      {"||phi F_i|| <= 1/F_i", golden_inequality},
      {"rank permutation within 1/F_i", [&] { return plain_rank_matching(shifted_detail); }},
      {"nested intervals and target bound", nested_construction},
      {"closed form equals brute force", oracle_equivalence},
      {"D_N / ln N and block bound", growth_law},
      {"2^k rejected", inadmissibility_guard},
  };

  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool expected_fail = kExpectedFailures.count(id) > 0;
    std::printf("[%s] %d %s: %s (%.2fs)%s\n", o.pass ? "PASS" : "FAIL", id,
                criteria[i].first.c_str(), o.detail.c_str(), secs,
                expected_fail ? (o.pass ? " [expected FAIL]" : " [known failure]") : "");
    if (id == 4) {
      std::printf("       mod-1 reading: %s\n", shifted_detail.c_str());
    }
    if (o.pass == expected_fail) {
      ++unexpected;
    }
  }
  std::printf("%d unexpected outcome(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
