#include "lowdisc/golden.hpp"

#include "lowdisc/fib_numeration.hpp"

#include <algorithm>
#include <numeric>

namespace lowdisc {

GoldenNumber::GoldenNumber(Integer a, Integer b, Integer d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (sgn(d_) == 0) {
    throw std::invalid_argument("GoldenNumber with zero denominator");
  }
  canonicalize();
}

GoldenNumber::GoldenNumber(const Rational& q) : a_(q.get_num()), b_(0), d_(q.get_den()) {
  canonicalize();
}

GoldenNumber GoldenNumber::phi() { return GoldenNumber(1, 1, 2); }
GoldenNumber GoldenNumber::phi_conjugate() { return GoldenNumber(1, -1, 2); }
GoldenNumber GoldenNumber::sqrt5() { return GoldenNumber(0, 1, 1); }

void GoldenNumber::canonicalize() {
  if (sgn(d_) < 0) {
    a_ = -a_;
    b_ = -b_;
    d_ = -d_;
  }
  Integer g = gcd(gcd(a_, b_), d_);
  if (g != 1) {
    a_ /= g;
    b_ /= g;
    d_ /= g;
  }
}

Rational GoldenNumber::rational_part() const { return make_rational(a_, d_); }
Rational GoldenNumber::irrational_coefficient() const { return make_rational(b_, d_); }

int sign_of(const Integer& a, const Integer& b) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) {
    return sa;
  }
  if (sa == 0 || sa == sb) {
    return sb;
  }
  // Mixed signs: the term with the larger square wins. a^2 == 5b^2 has no
  // nonzero integer solutions.
  const int c = cmp(Integer(a * a), Integer(5 * b * b));
  return sa > 0 ? c : -c;
}

int GoldenNumber::sign() const { return sign_of(a_, b_); }

GoldenNumber GoldenNumber::operator-() const {
  GoldenNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

GoldenNumber operator+(const GoldenNumber& x, const GoldenNumber& y) {
  if (x.d_ == y.d_) {
    return GoldenNumber(x.a_ + y.a_, x.b_ + y.b_, x.d_);
  }
  return GoldenNumber(x.a_ * y.d_ + y.a_ * x.d_, x.b_ * y.d_ + y.b_ * x.d_, x.d_ * y.d_);
}

GoldenNumber operator-(const GoldenNumber& x, const GoldenNumber& y) { return x + (-y); }

GoldenNumber operator*(const GoldenNumber& x, const GoldenNumber& y) {
  return GoldenNumber(x.a_ * y.a_ + 5 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_ * y.d_);
}

std::strong_ordering operator<=>(const GoldenNumber& x, const GoldenNumber& y) {
  // Denominators are positive, so cross-multiplication preserves order.
  const int s = sign_of(x.a_ * y.d_ - y.a_ * x.d_, x.b_ * y.d_ - y.b_ * x.d_);
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string GoldenNumber::to_decimal(unsigned digits) const {
  if (is_rational()) {
    return lowdisc::to_decimal(rational_part(), digits);
  }
  const Integer scale = pow10(digits);
  const GoldenNumber scaled(a_ * scale, b_ * scale, d_);
  Integer m = floor(scaled);
  // The remainder is irrational, so it is never exactly 1/2.
  if ((scaled - GoldenNumber(Rational(m) + Rational(1, 2))).sign() > 0) {
    ++m;
  }
  return format_scaled(m, digits);
}

std::string GoldenNumber::to_string() const {
  return "(" + a_.get_str() + (sgn(b_) < 0 ? " - " : " + ") + Integer(abs(b_)).get_str() + "*sqrt5)/" +
         d_.get_str();
}

Integer floor(const GoldenNumber& x) {
  if (x.is_rational()) {
    return floor(x.rational_part());
  }
  // s = floor(b*sqrt5); b*sqrt5 lies strictly inside (s, s + 1).
  const Integer root = isqrt(Integer(5 * x.b() * x.b()));
  const Integer s = sgn(x.b()) > 0 ? root : Integer(-root - 1);
  // x is in ((a+s)/d, (a+s+1)/d): the floor is m or m - 1.
  const Integer m = floor(make_rational(x.a() + s + 1, x.d()));
  if (sign_of(x.a() - m * x.d(), x.b()) >= 0) {
    return m;
  }
  return m - 1;
}

GoldenNumber frac(const GoldenNumber& x) { return x - GoldenNumber(Rational(floor(x))); }

GoldenNumber dist_nearest_int(const GoldenNumber& x) {
  GoldenNumber f = frac(x);
  GoldenNumber g = GoldenNumber(1) - f;
  return f <= g ? f : g;
}

Rational rational_floor(const GoldenNumber& x, unsigned digits) {
  const Integer scale = pow10(digits);
  return make_rational(floor(GoldenNumber(x.a() * scale, x.b() * scale, x.d())), scale);
}

GoldenNumber frac_phi_k(std::uint64_t k) {
  if (k == 0) {
    throw std::invalid_argument("frac_phi_k needs k >= 1");
  }
  const Integer kk(static_cast<unsigned long>(k));
  return frac(GoldenNumber(kk, kk, 2));
}

CertificationError::CertificationError(std::uint64_t start, std::size_t index, std::size_t offset)
    : std::runtime_error("no shifted rank matching within 1/F_i at start=" + std::to_string(start) +
                         " i=" + std::to_string(index) + " k=" + std::to_string(offset)),
      start_(start),
      index_(index),
      offset_(offset) {}

namespace {

GoldenNumber grid_point(std::uint64_t numerator, const Integer& length) {
  return GoldenNumber(make_rational(Integer(static_cast<unsigned long>(numerator)), length));
}

GoldenNumber abs(GoldenNumber x) { return x.sign() < 0 ? -x : x; }

}  // namespace

SigmaPermutation sigma_permutation(std::uint64_t start, std::size_t index) {
  if (start == 0 || index == 0) {
    throw std::invalid_argument("sigma_permutation needs start >= 1 and index >= 1");
  }
  const std::uint64_t length = fib_u64(index);
  const Integer len(static_cast<unsigned long>(length));
  std::vector<GoldenNumber> points;
  points.reserve(length);
  for (std::uint64_t k = 0; k < length; ++k) {
    points.push_back(frac_phi_k(start + k));
  }

  std::vector<std::size_t> order(length);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return points[l] < points[r]; });

  SigmaPermutation out;
  out.start = start;
  out.index = index;
  out.length = length;
  out.rank.resize(length);
  for (std::size_t r = 0; r < length; ++r) {
    out.rank[order[r]] = r + 1;
  }

  const GoldenNumber tolerance(make_rational(1, len));
  for (std::size_t k = 0; k < length; ++k) {
    if (abs(points[k] - grid_point(out.rank[k], len)) > tolerance) {
      out.plain_rank_violation = k;
      break;
    }
  }

  // The smallest point goes to the grid value nearest to it (mod 1); the best
  // shift is that one or a neighbour.
  const GoldenNumber& lowest = points[order.front()];
  const Integer nearest =
      floor(lowest * GoldenNumber(Rational(len)) + GoldenNumber(Rational(1, 2)));
  const std::uint64_t v0 = Integer(nearest % len).get_ui();
  const std::uint64_t s0 = (v0 + length - 1) % length;

  auto deviation = [&](std::size_t k, std::uint64_t shift) {
    const std::uint64_t sigma = (out.rank[k] - 1 + shift) % length + 1;
    return dist_nearest_int(points[k] - grid_point(sigma, len));
  };
  auto max_deviation = [&](std::uint64_t shift) {
    GoldenNumber worst;
    for (std::size_t k = 0; k < length; ++k) {
      GoldenNumber d = deviation(k, shift);
      if (d > worst) {
        worst = std::move(d);
      }
    }
    return worst;
  };

  out.shift = s0;
  out.max_deviation = max_deviation(s0);
  for (std::uint64_t candidate : {(s0 + length - 1) % length, (s0 + 1) % length}) {
    if (candidate == out.shift) {
      continue;
    }
    GoldenNumber d = max_deviation(candidate);
    if (d < out.max_deviation) {
      out.max_deviation = std::move(d);
      out.shift = candidate;
    }
  }

  if (out.max_deviation > tolerance) {
    for (std::size_t k = 0; k < length; ++k) {
      if (deviation(k, out.shift) > tolerance) {
        throw CertificationError(start, index, k);
      }
    }
  }
  out.sigma.resize(length);
  for (std::size_t k = 0; k < length; ++k) {
    out.sigma[k] = (out.rank[k] - 1 + out.shift) % length + 1;
  }
  return out;
}

}  // namespace lowdisc
