#pragma once

// Nested rational intervals converging to a real alpha with
// ||alpha * n_k - target_k|| <= c / k at every constructed stage k.
//
// Stage k keeps the interval
//   [(target_k + z_k)/n_k - c/(k n_k), (target_k + z_k)/n_k + c/(k n_k)]
// and each refinement picks z_{k+1} so the next interval sits inside it.

#include "lowdisc/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdisc {

namespace detail {
struct TermCache;
}

/// A positive integer sequence n_1, n_2, ... with an optional declared lower
/// bound kappa for inf n_{k+1} / (k n_k). Terms are memoized; copies share the
/// cache, which is safe to use from several threads.
class GrowthSequence {
 public:
  using TermFn = std::function<Integer(std::uint64_t)>;

  GrowthSequence(std::string name, TermFn term, std::optional<Rational> kappa = std::nullopt);

  static GrowthSequence factorial();
  /// n_k = k^k; the ratio (1 + 1/k)^(k+1) decreases to e, so kappa = 2.
  static GrowthSequence self_power();
  /// n_k = q^k; fails the growth condition.
  static GrowthSequence geometric(unsigned long q);

  const std::string& name() const { return name_; }
  const std::optional<Rational>& declared_kappa() const { return kappa_; }

  /// n_k for k >= 1.
  Integer term(std::uint64_t k) const;

 private:
  std::string name_;
  std::optional<Rational> kappa_;
  std::shared_ptr<detail::TermCache> cache_;
};

struct GrowthReport {
  /// min over 1 <= k <= prefix of n_{k+1} / (k n_k).
  Rational min_ratio;
  std::uint64_t argmin = 0;
  std::uint64_t prefix = 0;
  bool strictly_decreasing = false;
  bool increasing_terms = true;
  /// Declared kappa (if any) does not exceed the observed minimum.
  bool kappa_consistent = true;
  bool admissible = true;
  std::string diagnostic;
};

/// Ratios below this that fall at every step look like q^k: the infimum is 0.
inline const Rational kDefaultDecayThreshold{1, 2};

GrowthReport check_growth(const GrowthSequence& seq, std::uint64_t prefix,
                          const Rational& decay_threshold = kDefaultDecayThreshold);

class InadmissibleSequence : public std::runtime_error {
 public:
  explicit InadmissibleSequence(GrowthReport report);
  const GrowthReport& report() const { return report_; }

 private:
  GrowthReport report_;
};

class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(std::uint64_t stage, const std::string& what);
  std::uint64_t stage() const { return stage_; }

 private:
  std::uint64_t stage_;
};

/// Smallest c for which every refinement from `start_stage` on is guaranteed:
/// 2 c kappa >= 1 + 2c/(k+1) for all k >= start_stage, and c >= (start_stage-1)/2
/// so that the stages skipped before the start hold trivially.
struct CBound {
  Rational minimal;
  std::uint64_t start_stage = 1;
  /// ceil(minimal), at least 1.
  Integer rounded;
};

/// Picks the smallest start stage that admits a finite c. Throws
/// std::invalid_argument for kappa <= 0 and std::domain_error when no start
/// stage up to max_start works.
CBound min_c(const Rational& kappa, std::uint64_t max_start = 1000000);

/// The constant used by default: twice the rounded minimum.
Rational default_c(const CBound& bound);

using TargetFn = std::function<Rational(std::uint64_t)>;

/// {phi k} rounded down to `digits` decimals.
TargetFn golden_targets(unsigned digits = 60);

/// All-zero targets.
TargetFn zero_targets();

struct StageRecord {
  std::uint64_t k;
  Integer n;
  Rational target;
  Integer z;
  Rational lo;
  Rational hi;

  Rational center() const;
};

class AlphaApprox {
 public:
  /// Stage `start_stage` interval with z = 0.
  static AlphaApprox start(GrowthSequence seq, TargetFn targets, Rational c,
                           std::uint64_t start_stage = 1);

  std::uint64_t stage() const { return history_.back().k; }
  std::uint64_t start_stage() const { return history_.front().k; }
  const Rational& c() const { return c_; }
  const Rational& lo() const { return history_.back().lo; }
  const Rational& hi() const { return history_.back().hi; }
  Rational midpoint() const { return history_.back().center(); }
  Rational width() const { return hi() - lo(); }
  const std::vector<StageRecord>& history() const { return history_; }
  const StageRecord& record(std::uint64_t k) const;
  const GrowthSequence& sequence() const { return seq_; }
  Rational target(std::uint64_t k) const { return targets_(k); }

  std::vector<Integer> zs() const;

 private:
  AlphaApprox(GrowthSequence seq, TargetFn targets, Rational c)
      : seq_(std::move(seq)), targets_(std::move(targets)), c_(std::move(c)) {}

  friend AlphaApprox refine(AlphaApprox state);

  GrowthSequence seq_;
  TargetFn targets_;
  Rational c_;
  std::vector<StageRecord> history_;
};

/// Advances one stage. The new z is the admissible integer whose center is
/// closest to the current center (ties to the smaller z). Throws
/// ConstructionError when no z fits or the nesting check fails.
AlphaApprox refine(AlphaApprox state);

struct ConstructOptions {
  std::uint64_t start_stage = 1;
  /// Skip check_growth; used only to exercise the refine failure path.
  bool skip_growth_check = false;
};

/// Runs check_growth over the first `stages` ratios, then refines up to
/// `stages`. Throws InadmissibleSequence or ConstructionError.
AlphaApprox construct_alpha(const GrowthSequence& seq, const TargetFn& targets,
                            std::uint64_t stages, const Rational& c,
                            const ConstructOptions& options = {});

/// First k with ||midpoint * n_k - target_k|| > c/k, or nullopt when the
/// bound holds for every stage in the history.
std::optional<std::uint64_t> find_target_violation(const AlphaApprox& state);

struct PointEstimate {
  /// {midpoint * n_k}
  Rational value;
  /// n_k * (hi - lo) / 2 bounds |{alpha n_k} - value| unless the fractional
  /// part wraps.
  Rational error_bound;
  bool wrap_risk = false;
};

/// Throws std::out_of_range unless 1 <= k <= stage.
PointEstimate point(const AlphaApprox& state, std::uint64_t k);

/// Number of decimals on which every number in [lo, hi] agrees when truncated.
unsigned certified_digits(const AlphaApprox& state, unsigned cap = 100000);

}  // namespace lowdisc
