#include "lowdisc/numeric.hpp"

#include <cctype>
#include <stdexcept>

namespace lowdisc {

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer isqrt(const Integer& n) {
  if (sgn(n) < 0) {
    throw std::domain_error("isqrt of a negative integer");
  }
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Rational frac(const Rational& x) {
  Rational f = x - Rational(floor(x));
  f.canonicalize();
  return f;
}

Rational dist_nearest_int(const Rational& x) {
  Rational f = frac(x);
  Rational g = 1 - f;
  return f <= g ? f : g;
}

Integer pow10(unsigned digits) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  return p;
}

Integer round_half_even(const Rational& x) {
  Integer m = floor(x);
  Rational rem = x - Rational(m);
  int cmp = ::cmp(rem, Rational(1, 2));
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(m.get_mpz_t()))) {
    ++m;
  }
  return m;
}

std::string format_scaled(const Integer& scaled, unsigned digits) {
  bool negative = sgn(scaled) < 0;
  std::string body = Integer(abs(scaled)).get_str();
  if (body.size() <= digits) {
    body.insert(0, digits + 1 - body.size(), '0');
  }
  std::string out;
  if (negative) {
    out.push_back('-');
  }
  out.append(body, 0, body.size() - digits);
  if (digits > 0) {
    out.push_back('.');
    out.append(body, body.size() - digits, digits);
  }
  return out;
}

std::string to_decimal(const Rational& x, unsigned digits) {
  return format_scaled(round_half_even(x * Rational(pow10(digits))), digits);
}

std::string to_decimal_floor(const Rational& x, unsigned digits) {
  return format_scaled(floor(x * Rational(pow10(digits))), digits);
}

std::string to_fraction_string(const Rational& x) {
  Rational r(x);
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) {
    throw std::invalid_argument("zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      return false;
    }
  }
  return true;
}

Integer parse_signed_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  Integer value(std::string(digits), 10);
  return s.front() == '-' ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty number");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_signed_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    }
    return make_rational(num, Integer(std::string(den_text), 10));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view fraction = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      whole.remove_prefix(1);
    }
    if ((whole.empty() && fraction.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!fraction.empty() && !all_digits(fraction))) {
      throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
    }
    std::string joined = std::string(whole) + std::string(fraction);
    Integer num(joined.empty() ? std::string("0") : joined, 10);
    Rational r = make_rational(num, pow10(static_cast<unsigned>(fraction.size())));
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_signed_integer(text));
}

}  // namespace lowdisc
