#include "lowdisc/alpha.hpp"

#include "lowdisc/golden.hpp"

#include <algorithm>
#include <mutex>

namespace lowdisc {

namespace detail {

struct TermCache {
  explicit TermCache(GrowthSequence::TermFn f) : fn(std::move(f)) {}

  GrowthSequence::TermFn fn;
  std::mutex mutex;
  std::vector<std::optional<Integer>> terms;
};

}  // namespace detail

GrowthSequence::GrowthSequence(std::string name, TermFn term, std::optional<Rational> kappa)
    : name_(std::move(name)),
      kappa_(std::move(kappa)),
      cache_(std::make_shared<detail::TermCache>(std::move(term))) {
  if (kappa_ && sgn(*kappa_) <= 0) {
    throw std::invalid_argument("declared kappa must be positive");
  }
}

GrowthSequence GrowthSequence::factorial() {
  return GrowthSequence(
      "factorial",
      [](std::uint64_t k) {
        Integer r;
        mpz_fac_ui(r.get_mpz_t(), k);
        return r;
      },
      Rational(1));
}

GrowthSequence GrowthSequence::self_power() {
  return GrowthSequence(
      "k_pow_k",
      [](std::uint64_t k) {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), k, k);
        return r;
      },
      Rational(2));
}

GrowthSequence GrowthSequence::geometric(unsigned long q) {
  return GrowthSequence("pow" + std::to_string(q), [q](std::uint64_t k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, k);
    return r;
  });
}

Integer GrowthSequence::term(std::uint64_t k) const {
  if (k == 0) {
    throw std::out_of_range("sequence terms start at k = 1");
  }
  std::lock_guard lock(cache_->mutex);
  auto& terms = cache_->terms;
  if (terms.size() < k) {
    terms.resize(k);
  }
  auto& slot = terms[k - 1];
  if (!slot) {
    slot = cache_->fn(k);
  }
  return *slot;
}

GrowthReport check_growth(const GrowthSequence& seq, std::uint64_t prefix,
                          const Rational& decay_threshold) {
  if (prefix == 0) {
    throw std::invalid_argument("check_growth needs a prefix of at least one ratio");
  }
  GrowthReport report;
  report.prefix = prefix;
  report.strictly_decreasing = prefix >= 2;

  Integer prev = seq.term(1);
  report.increasing_terms = sgn(prev) > 0;
  Rational last_ratio;
  for (std::uint64_t k = 1; k <= prefix; ++k) {
    Integer next = seq.term(k + 1);
    if (next <= prev) {
      report.increasing_terms = false;
    }
    Rational ratio = make_rational(next, Integer(static_cast<unsigned long>(k)) * prev);
    if (k == 1 || ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.argmin = k;
    }
    if (k > 1 && !(ratio < last_ratio)) {
      report.strictly_decreasing = false;
    }
    last_ratio = ratio;
    prev = std::move(next);
  }

  if (seq.declared_kappa()) {
    report.kappa_consistent = *seq.declared_kappa() <= report.min_ratio;
  }
  const bool decaying = report.strictly_decreasing && report.min_ratio < decay_threshold;
  report.admissible = report.increasing_terms && report.kappa_consistent && !decaying;

  if (!report.increasing_terms) {
    report.diagnostic = "terms are not positive and strictly increasing";
  } else if (!report.kappa_consistent) {
    report.diagnostic = "declared kappa " + to_fraction_string(*seq.declared_kappa()) +
                        " exceeds observed minimum " + to_fraction_string(report.min_ratio);
  } else if (decaying) {
    report.diagnostic = "n_{k+1}/(k n_k) decreases at every step and reaches " +
                        to_fraction_string(report.min_ratio) +
                        "; inf_k n_{k+1}/(k n_k) > 0 fails";
  }
  return report;
}

InadmissibleSequence::InadmissibleSequence(GrowthReport report)
    : std::runtime_error("inadmissible sequence: " + report.diagnostic),
      report_(std::move(report)) {}

ConstructionError::ConstructionError(std::uint64_t stage, const std::string& what)
    : std::runtime_error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}

CBound min_c(const Rational& kappa, std::uint64_t max_start) {
  if (sgn(kappa) <= 0) {
    throw std::invalid_argument("kappa must be positive");
  }
  // Need kappa > 1/(k0 + 1); the smallest such k0 is floor(1/kappa), at least 1.
  Integer k0 = floor(Rational(1) / kappa);
  if (k0 < 1) {
    k0 = 1;
  }
  if (k0 > Integer(static_cast<unsigned long>(max_start))) {
    throw std::domain_error("no start stage up to " + std::to_string(max_start) +
                            " admits a finite c for kappa = " + to_fraction_string(kappa));
  }
  const Rational slack = 2 * kappa - make_rational(2, k0 + 1);
  Rational minimal = Rational(1) / slack;
  const Rational skipped = make_rational(k0 - 1, 2);
  if (skipped > minimal) {
    minimal = skipped;
  }
  minimal.canonicalize();

  CBound bound;
  bound.minimal = minimal;
  bound.start_stage = k0.get_ui();
  bound.rounded = ceil(minimal);
  if (bound.rounded < 1) {
    bound.rounded = 1;
  }
  return bound;
}

Rational default_c(const CBound& bound) { return Rational(2 * bound.rounded); }

TargetFn golden_targets(unsigned digits) {
  return [digits](std::uint64_t k) { return rational_floor(frac_phi_k(k), digits); };
}

TargetFn zero_targets() {
  return [](std::uint64_t) { return Rational(0); };
}

Rational StageRecord::center() const {
  Rational m = (lo + hi) / 2;
  m.canonicalize();
  return m;
}

namespace {

Rational half_width(const Rational& c, std::uint64_t k, const Integer& n) {
  Rational h = c / Rational(Integer(static_cast<unsigned long>(k)) * n);
  h.canonicalize();
  return h;
}

}  // namespace

AlphaApprox AlphaApprox::start(GrowthSequence seq, TargetFn targets, Rational c,
                               std::uint64_t start_stage) {
  if (sgn(c) <= 0) {
    throw std::invalid_argument("c must be positive");
  }
  if (start_stage == 0) {
    throw std::invalid_argument("stages start at 1");
  }
  AlphaApprox state(std::move(seq), std::move(targets), std::move(c));
  StageRecord rec;
  rec.k = start_stage;
  rec.n = state.seq_.term(start_stage);
  rec.target = state.targets_(start_stage);
  rec.z = 0;
  const Rational center = make_rational(rec.target.get_num(), rec.target.get_den() * rec.n);
  const Rational h = half_width(state.c_, start_stage, rec.n);
  rec.lo = center - h;
  rec.hi = center + h;
  state.history_.push_back(std::move(rec));
  return state;
}

const StageRecord& AlphaApprox::record(std::uint64_t k) const {
  if (k < start_stage() || k > stage()) {
    throw std::out_of_range("stage " + std::to_string(k) + " not in history");
  }
  return history_[k - start_stage()];
}

std::vector<Integer> AlphaApprox::zs() const {
  std::vector<Integer> out;
  out.reserve(history_.size());
  for (const auto& rec : history_) {
    out.push_back(rec.z);
  }
  return out;
}

AlphaApprox refine(AlphaApprox state) {
  const StageRecord& cur = state.history_.back();
  StageRecord next;
  next.k = cur.k + 1;
  next.n = state.seq_.term(next.k);
  next.target = state.targets_(next.k);

  const Rational h = half_width(state.c_, next.k, next.n);
  const Rational n(next.n);
  // Admissible centers (target + z)/n must lie in [lo + h, hi - h].
  const Integer z_min = ceil((cur.lo + h) * n - next.target);
  const Integer z_max = floor((cur.hi - h) * n - next.target);
  if (z_min > z_max) {
    throw ConstructionError(next.k, "no admissible z (c = " + to_fraction_string(state.c_) +
                                        " is too small for this sequence)");
  }

  const Rational ideal = cur.center() * n - next.target;
  Integer z = floor(ideal);
  if (ideal - Rational(z) > Rational(1, 2)) {
    ++z;
  }
  z = std::clamp(z, z_min, z_max);

  const Rational center = (next.target + Rational(z)) / n;
  next.z = std::move(z);
  next.lo = center - h;
  next.hi = center + h;
  next.lo.canonicalize();
  next.hi.canonicalize();
  if (next.lo < cur.lo || next.hi > cur.hi) {
    throw ConstructionError(next.k, "nesting check failed");
  }
  state.history_.push_back(std::move(next));
  return state;
}

AlphaApprox construct_alpha(const GrowthSequence& seq, const TargetFn& targets,
                            std::uint64_t stages, const Rational& c,
                            const ConstructOptions& options) {
  if (stages < options.start_stage) {
    throw std::invalid_argument("stages must be at least the start stage");
  }
  if (!options.skip_growth_check) {
    GrowthReport report = check_growth(seq, std::max<std::uint64_t>(stages, 2));
    if (!report.admissible) {
      throw InadmissibleSequence(std::move(report));
    }
  }
  AlphaApprox state = AlphaApprox::start(seq, targets, c, options.start_stage);
  while (state.stage() < stages) {
    state = refine(std::move(state));
  }
  return state;
}

std::optional<std::uint64_t> find_target_violation(const AlphaApprox& state) {
  const Rational mid = state.midpoint();
  for (std::uint64_t k = 1; k <= state.stage(); ++k) {
    const Rational bound = state.c() / Rational(Integer(static_cast<unsigned long>(k)));
    if (dist_nearest_int(mid * Rational(state.sequence().term(k)) - state.target(k)) > bound) {
      return k;
    }
  }
  return std::nullopt;
}

PointEstimate point(const AlphaApprox& state, std::uint64_t k) {
  if (k < 1 || k > state.stage()) {
    throw std::out_of_range("point index " + std::to_string(k) + " outside 1.." +
                            std::to_string(state.stage()));
  }
  const Rational n(state.sequence().term(k));
  PointEstimate est;
  est.value = frac(state.midpoint() * n);
  est.error_bound = n * state.width() / 2;
  est.error_bound.canonicalize();
  est.wrap_risk = est.value <= est.error_bound || Rational(1) - est.value <= est.error_bound;
  return est;
}

unsigned certified_digits(const AlphaApprox& state, unsigned cap) {
  const Rational w = state.width();
  // 10^-d >= width roughly bounds the answer from above.
  const long estimate = static_cast<long>(mpz_sizeinbase(w.get_den_mpz_t(), 10)) -
                        static_cast<long>(mpz_sizeinbase(w.get_num_mpz_t(), 10)) + 1;
  unsigned d = static_cast<unsigned>(std::clamp<long>(estimate, 0, cap));
  for (;;) {
    const Rational scale(pow10(d));
    if (floor(state.lo() * scale) == floor(state.hi() * scale) || d == 0) {
      return d;
    }
    --d;
  }
}

}  // namespace lowdisc
