#include "lowdisc/verify.hpp"

#include "lowdisc/alpha.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/fib_numeration.hpp"
#include "lowdisc/golden.hpp"

#include <random>
#include <sstream>

namespace lowdisc {

namespace {

using Rng = std::mt19937_64;

SuiteResult rewrite_safety(Rng& rng, bool inject_fault) {
  std::uniform_int_distribution<int> len_dist(3, 24);
  std::uniform_int_distribution<int> digit_dist(0, 2);
  std::size_t rewrites = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    DigitString digits(static_cast<std::size_t>(len_dist(rng)));
    for (auto& d : digits) {
      d = digit_dist(rng);
    }
    const Integer before = digit_value(digits);
    for (std::size_t pos = 1; pos <= digits.size(); ++pos) {
      DigitString after;
      if (pos + 2 <= digits.size() && digits[pos - 1] == 0 && digits[pos] == 0 &&
          digits[pos + 1] == 1) {
        after = apply_procedure1(digits, pos);
      } else if (pos >= 2 && pos + 1 <= digits.size() && digits[pos - 1] == 0 &&
                 digits[pos] >= 1) {
        after = apply_procedure2(digits, pos);
      } else {
        continue;
      }
      if (inject_fault && rewrites == 0) {
        after.back() += 1;
      }
      ++rewrites;
      if (digit_value(after) != before) {
        std::ostringstream os;
        os << "value changed at trial " << trial << " position " << pos;
        return {"rewrite_safety", false, os.str()};
      }
    }
  }
  return {"rewrite_safety", true, std::to_string(rewrites) + " rewrites preserved the value"};
}

SuiteResult positive_representation(Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> big(1, std::uint64_t{1} << 62);
  auto check = [](std::uint64_t n) {
    FibDigits rep = to_positive_rep(n);
    if (rep.value() != n || rep.digits.empty() || rep.digits[0] < 1 || rep.digits[0] > 3 ||
        rep.length() > length_bound(n)) {
      return false;
    }
    for (std::size_t i = 1; i < rep.digits.size(); ++i) {
      if (rep.digits[i] < 1 || rep.digits[i] > 2) {
        return false;
      }
    }
    return true;
  };
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    if (!check(n)) {
      return {"positive_representation", false, "fails at N = " + std::to_string(n)};
    }
  }
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t n = big(rng);
    if (!check(n)) {
      return {"positive_representation", false, "fails at N = " + std::to_string(n)};
    }
  }
  return {"positive_representation", true, "N <= 20000 and 2000 random N < 2^62"};
}

SuiteResult partition_coverage() {
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    SegmentPartition part = partition(n);
    std::uint64_t next = part.prefix_size + 1;
    for (const Block& b : part.blocks) {
      if (b.start != next || b.length != fib_u64(b.index) || b.start < b.length) {
        return {"partition_coverage", false, "fails at N = " + std::to_string(n)};
      }
      next += b.length;
    }
    if (next != n + 1 || part.prefix_size < 1 || part.prefix_size > 3 ||
        part.distinct_indices() > length_bound(n)) {
      return {"partition_coverage", false, "fails at N = " + std::to_string(n)};
    }
  }
  return {"partition_coverage", true, "exact cover with R >= F_i for N <= 5000"};
}

SuiteResult golden_inequality() {
  for (std::size_t i = 1; i <= 30; ++i) {
    const Integer f = fib(i);
    GoldenNumber dist = dist_nearest_int(GoldenNumber::phi() * GoldenNumber(Rational(f)));
    if (dist > GoldenNumber(make_rational(1, f))) {
      return {"golden_inequality", false, "||phi F_i|| > 1/F_i at i = " + std::to_string(i)};
    }
  }
  return {"golden_inequality", true, "||phi F_i|| <= 1/F_i for i <= 30"};
}

SuiteResult sigma_certification() {
  std::size_t windows = 0;
  try {
    for (std::size_t i = 1; i <= 12; ++i) {
      const std::uint64_t f = fib_u64(i);
      for (std::uint64_t r = f; r <= f + 50; ++r) {
        sigma_permutation(r, i);
        ++windows;
      }
    }
  } catch (const CertificationError& e) {
    return {"sigma_certification", false, e.what()};
  }
  return {"sigma_certification", true, std::to_string(windows) + " windows certified"};
}

SuiteResult oracle_equivalence(Rng& rng) {
  std::uniform_int_distribution<int> size_dist(1, 30);
  std::uniform_int_distribution<long> den_dist(1, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Rational> pts;
    const int n = size_dist(rng);
    for (int j = 0; j < n; ++j) {
      long den = den_dist(rng);
      std::uniform_int_distribution<long> num_dist(0, den - 1);
      pts.push_back(make_rational(num_dist(rng), den));
    }
    PointSet ps(std::move(pts));
    if (exact_discrepancy(ps).value != brute_force_discrepancy(ps)) {
      return {"oracle_equivalence", false, "mismatch at trial " + std::to_string(trial)};
    }
  }
  return {"oracle_equivalence", true, "2000 random point sets agree"};
}

SuiteResult nested_construction() {
  const GrowthSequence seq = GrowthSequence::factorial();
  const Rational c = default_c(min_c(*seq.declared_kappa()));
  try {
    AlphaApprox state = construct_alpha(seq, golden_targets(), 100, c);
    const auto& hist = state.history();
    for (std::size_t i = 1; i < hist.size(); ++i) {
      if (hist[i].lo < hist[i - 1].lo || hist[i].hi > hist[i - 1].hi) {
        return {"nested_construction", false, "not nested at stage " + std::to_string(hist[i].k)};
      }
    }
    if (auto k = find_target_violation(state)) {
      return {"nested_construction", false, "||alpha n_k - xi_k|| > c/k at k = " + std::to_string(*k)};
    }
    // Re-check against the exact irrational targets.
    const GoldenNumber mid(state.midpoint());
    for (std::uint64_t k = 1; k <= state.stage(); ++k) {
      GoldenNumber gap = mid * GoldenNumber(Rational(seq.term(k))) - frac_phi_k(k);
      if (dist_nearest_int(gap) > GoldenNumber(c / Rational(static_cast<unsigned long>(k)))) {
        return {"nested_construction", false, "exact target check fails at k = " + std::to_string(k)};
      }
    }
  } catch (const std::exception& e) {
    return {"nested_construction", false, e.what()};
  }
  return {"nested_construction", true, "factorial, c = " + to_fraction_string(c) + ", K = 100"};
}

SuiteResult admissibility_guard() {
  GrowthReport report = check_growth(GrowthSequence::geometric(2), 10);
  if (report.admissible) {
    return {"admissibility_guard", false, "2^k was accepted"};
  }
  if (!check_growth(GrowthSequence::factorial(), 200).admissible) {
    return {"admissibility_guard", false, "factorial was rejected"};
  }
  return {"admissibility_guard", true, "2^k rejected: " + report.diagnostic};
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options,
                                          const std::function<void(const SuiteResult&)>& progress) {
  Rng rng(options.seed);
  std::vector<SuiteResult> results;
  auto add = [&](SuiteResult r) {
    if (progress) {
      progress(r);
    }
    results.push_back(std::move(r));
  };
  add(rewrite_safety(rng, options.inject_fault));
  add(positive_representation(rng));
  add(partition_coverage());
  add(golden_inequality());
  add(sigma_certification());
  add(oracle_equivalence(rng));
  add(nested_construction());
  add(admissibility_guard());
  return results;
}

}  // namespace lowdisc
