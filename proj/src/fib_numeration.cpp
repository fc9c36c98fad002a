#include "lowdisc/fib_numeration.hpp"

#include <array>
#include <set>
#include <stdexcept>

namespace lowdisc {

namespace {

constexpr std::size_t kMaxU64Index = 91;

constexpr std::array<std::uint64_t, kMaxU64Index + 1> make_fib_table() {
  std::array<std::uint64_t, kMaxU64Index + 1> t{};
  t[0] = 1;
  t[1] = 1;
  for (std::size_t i = 2; i < t.size(); ++i) {
    t[i] = t[i - 1] + t[i - 2];
  }
  return t;
}

constexpr auto kFibTable = make_fib_table();

std::uint64_t checked_value(const DigitString& digits) {
  Integer v = digit_value(digits);
  if (!v.fits_ulong_p()) {
    throw std::overflow_error("digit string value exceeds 64 bits");
  }
  return v.get_ui();
}

void trim(DigitString& digits) {
  while (!digits.empty() && digits.back() == 0) {
    digits.pop_back();
  }
}

class Rewriter {
 public:
  explicit Rewriter(DigitString digits) : digits_(std::move(digits)) {}

  // Repeated left-to-right passes until no (0,0,1) remains.
  void sweep_procedure1() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t pos = 1; pos + 2 <= digits_.size(); ++pos) {
        if (digits_[pos - 1] == 0 && digits_[pos] == 0 && digits_[pos + 1] == 1) {
          digits_ = apply_procedure1(std::move(digits_), pos);
          record(RewriteStep::Kind::procedure1, pos);
          changed = true;
        }
      }
      trim_and_record();
    }
  }

  void fix_leading_pair() {
    if (digits_.front() != 0) {
      return;
    }
    if (digits_.size() < 2 || digits_[1] != 1) {
      throw std::logic_error("leading zero not followed by a one");
    }
    // F_2 = 2 F_1
    digits_[0] = 2;
    digits_[1] = 0;
    record(RewriteStep::Kind::leading_pair, 1);
    trim_and_record();
  }

  // Returns false once no zero remains.
  bool migrate_lowest_zero() {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (digits_[i] == 0) {
        pos = i + 1;
        break;
      }
    }
    if (pos == 0) {
      return false;
    }
    digits_ = apply_procedure2(std::move(digits_), pos);
    record(RewriteStep::Kind::procedure2, pos);
    trim_and_record();
    sweep_procedure1();
    return true;
  }

  const DigitString& digits() const { return digits_; }
  std::vector<RewriteStep> take_steps() { return std::move(steps_); }

 private:
  void record(RewriteStep::Kind kind, std::size_t pos) { steps_.push_back({kind, pos, digits_}); }

  void trim_and_record() {
    std::size_t before = digits_.size();
    trim(digits_);
    if (digits_.size() != before) {
      record(RewriteStep::Kind::trim, digits_.size() + 1);
    }
  }

  DigitString digits_;
  std::vector<RewriteStep> steps_;
};

}  // namespace

Integer fib(std::size_t i) {
  if (i <= kMaxU64Index) {
    return Integer(static_cast<unsigned long>(kFibTable[i]));
  }
  // Standard Fibonacci numbering is shifted by one: F_i = Fs_{i+1}.
  Integer r;
  mpz_fib_ui(r.get_mpz_t(), i + 1);
  return r;
}

std::uint64_t fib_u64(std::size_t i) {
  if (i > kMaxU64Index) {
    throw std::out_of_range("F_i exceeds 64 bits for i > 91");
  }
  return kFibTable[i];
}

Integer digit_value(const DigitString& digits) {
  Integer v = 0;
  for (std::size_t p = 1; p <= digits.size(); ++p) {
    if (digits[p - 1] != 0) {
      v += Integer(digits[p - 1]) * fib(p);
    }
  }
  return v;
}

std::size_t length_bound(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("length_bound needs n >= 1");
  }
  // phi^m = Fs_m * phi + Fs_{m-1} with standard Fs_0 = 0, Fs_1 = 1.
  // phi^m <= n  <=>  Fs_m * sqrt5 <= 2n - Fs_m - 2 Fs_{m-1}.
  const Integer two_n = Integer(2) * Integer(static_cast<unsigned long>(n));
  Integer fs_prev = 1;  // Fs_{-1}
  Integer fs = 0;       // Fs_0
  std::size_t m = 0;
  for (;;) {
    Integer rhs = two_n - fs - 2 * fs_prev;
    bool fits = sgn(rhs) >= 0 && 5 * fs * fs <= rhs * rhs;
    if (!fits) {
      break;
    }
    ++m;
    Integer next = fs + fs_prev;
    fs_prev = fs;
    fs = next;
  }
  // m is the first exponent with phi^m > n, so r - 1 = m - 1.
  return m;
}

std::uint64_t ZeckDigits::value() const { return checked_value(digits); }

std::string ZeckDigits::to_string() const {
  std::string s;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    s.push_back(static_cast<char>('0' + *it));
  }
  return s;
}

std::uint64_t FibDigits::value() const { return checked_value(digits); }

std::string FibDigits::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0) {
      s.push_back(',');
    }
    s += std::to_string(digits[i]);
  }
  s.push_back(')');
  return s;
}

ZeckDigits zeckendorf(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("zeckendorf needs n >= 1");
  }
  std::size_t top = 1;
  while (top + 1 <= kMaxU64Index && kFibTable[top + 1] <= n) {
    ++top;
  }
  ZeckDigits z{DigitString(top, 0)};
  std::uint64_t rest = n;
  for (std::size_t p = top; p >= 1 && rest > 0; --p) {
    if (kFibTable[p] <= rest) {
      z.digits[p - 1] = 1;
      rest -= kFibTable[p];
    }
  }
  return z;
}

DigitString apply_procedure1(DigitString digits, std::size_t pos) {
  if (pos < 1 || pos + 2 > digits.size() || digits[pos - 1] != 0 || digits[pos] != 0 ||
      digits[pos + 1] != 1) {
    throw std::invalid_argument("procedure 1: no (0,0,1) pattern at position " +
                                std::to_string(pos));
  }
  digits[pos - 1] = 1;
  digits[pos] = 1;
  digits[pos + 1] = 0;
  return digits;
}

DigitString apply_procedure2(DigitString digits, std::size_t pos) {
  if (pos < 2 || pos + 1 > digits.size() || digits[pos - 1] != 0 || digits[pos] < 1) {
    throw std::invalid_argument("procedure 2: no (a,0,c>=1) pattern at position " +
                                std::to_string(pos));
  }
  digits[pos - 2] += 1;
  digits[pos - 1] = 1;
  digits[pos] -= 1;
  return digits;
}

std::string to_string(RewriteStep::Kind kind) {
  switch (kind) {
    case RewriteStep::Kind::procedure1:
      return "P1";
    case RewriteStep::Kind::leading_pair:
      return "lead";
    case RewriteStep::Kind::procedure2:
      return "P2";
    case RewriteStep::Kind::trim:
      return "trim";
  }
  return "?";
}

PositiveRepTrace to_positive_rep_traced(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("to_positive_rep needs n >= 1");
  }
  PositiveRepTrace trace;
  trace.zeckendorf = zeckendorf(n);

  Rewriter rw(trace.zeckendorf.digits);
  rw.sweep_procedure1();
  rw.fix_leading_pair();
  rw.sweep_procedure1();
  while (rw.migrate_lowest_zero()) {
  }

  trace.result.digits = rw.digits();
  trace.steps = rw.take_steps();
  return trace;
}

FibDigits to_positive_rep(std::uint64_t n) { return to_positive_rep_traced(n).result; }

std::size_t SegmentPartition::distinct_indices() const {
  std::set<std::size_t> indices;
  for (const auto& b : blocks) {
    indices.insert(b.index);
  }
  // Index 1 lives in the prefix.
  return indices.size() + (prefix_size > 0 ? 1 : 0);
}

SegmentPartition partition(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("partition needs n >= 1");
  }
  FibDigits rep = to_positive_rep(n);
  SegmentPartition part;
  part.n = n;
  part.prefix_size = static_cast<std::uint64_t>(rep.digits.front());
  std::uint64_t start = part.prefix_size + 1;
  for (std::size_t i = 2; i <= rep.digits.size(); ++i) {
    const std::uint64_t len = fib_u64(i);
    for (int j = 1; j <= rep.digits[i - 1]; ++j) {
      part.blocks.push_back({i, static_cast<std::size_t>(j), start, len});
      start += len;
    }
  }
  if (start != n + 1) {
    throw std::logic_error("partition does not end at n");
  }
  return part;
}

}  // namespace lowdisc
