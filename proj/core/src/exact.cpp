#include "dapprox/exact.hpp"

#include <cctype>
#include <climits>

#include "dapprox/errors.hpp"

namespace dapprox {

Integer to_integer(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == 8);
  return Integer(static_cast<unsigned long>(v));
}

Integer to_integer(std::int64_t v) {
  static_assert(sizeof(long) == 8);
  return Integer(static_cast<long>(v));
}

std::uint64_t to_u64(const Integer& v) {
  if (sgn(v) < 0 || !mpz_fits_ulong_p(v.get_mpz_t())) {
    throw PreconditionError("integer " + v.get_str() + " does not fit in 64 bits");
  }
  return mpz_get_ui(v.get_mpz_t());
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) {
    throw PreconditionError("malformed number '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw PreconditionError("malformed number '" + std::string(whole) + "'");
    }
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

unsigned long exponent_part(const Integer& v, const char* what) {
  if (!mpz_fits_slong_p(v.get_mpz_t())) {
    throw PreconditionError(std::string(what) + " exponent too large");
  }
  return static_cast<unsigned long>(std::labs(v.get_si()));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    const bool negative = !int_part.empty() && int_part[0] == '-';
    const std::string_view int_digits =
        (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) ? int_part.substr(1)
                                                                           : int_part;
    if (int_digits.empty() && frac_part.empty()) {
      throw PreconditionError("malformed number '" + std::string(text) + "'");
    }
    Integer whole = int_digits.empty() ? Integer(0) : parse_integer(int_digits, text);
    Integer frac = frac_part.empty() ? Integer(0) : parse_integer(frac_part, text);
    if (!frac_part.empty() && (frac_part[0] == '-' || frac_part[0] == '+')) {
      throw PreconditionError("malformed number '" + std::string(text) + "'");
    }
    Integer scale = ipow(Integer(10), frac_part.size());
    Rational r(whole * scale + frac, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

int compare_to_power(const Rational& x, const Integer& base, const Rational& e) {
  if (sgn(x) < 0) throw PreconditionError("compare_to_power: x must be nonnegative");
  if (base < 1) throw PreconditionError("compare_to_power: base must be >= 1");
  const unsigned long v = exponent_part(e.get_den(), "denominator");
  const unsigned long u = exponent_part(e.get_num(), "numerator");
  const Integer num_v = ipow(x.get_num(), v);
  const Integer den_v = ipow(x.get_den(), v);
  const Integer base_u = ipow(base, u);
  const int c = sgn(e) >= 0 ? cmp(num_v, base_u * den_v) : cmp(num_v * base_u, den_v);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Interval& Interval::operator+=(const Interval& other) {
  lo += other.lo;
  hi += other.hi;
  return *this;
}

Interval Interval::scaled(const Rational& factor) const {
  if (sgn(factor) < 0) throw PreconditionError("Interval::scaled: negative factor");
  return {lo * factor, hi * factor};
}

namespace {

// floor or ceil of x * 2^shift, then scaled back.
Rational dyadic_round(const Rational& x, unsigned bits, bool up) {
  if (sgn(x) == 0) return Rational(0);
  const Integer& n = x.get_num();
  const Integer& m = x.get_den();
  const long nb = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const long mb = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
  const long shift = static_cast<long>(bits) - (nb - mb) + 1;
  Integer t;
  Integer numer = n;
  Integer denom = m;
  if (shift >= 0) {
    mpz_mul_2exp(numer.get_mpz_t(), numer.get_mpz_t(), static_cast<unsigned long>(shift));
  } else {
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(-shift));
  }
  if (up) {
    mpz_cdiv_q(t.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
  } else {
    mpz_fdiv_q(t.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
  }
  Rational out;
  if (shift >= 0) {
    Integer pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(shift));
    out = Rational(t, pow2);
  } else {
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(-shift));
    out = Rational(t);
  }
  out.canonicalize();
  return out;
}

}  // namespace

Rational round_down_dyadic(const Rational& x, unsigned bits) {
  return dyadic_round(x, bits, /*up=*/false);
}

Rational round_up_dyadic(const Rational& x, unsigned bits) {
  return dyadic_round(x, bits, /*up=*/true);
}

Interval round_outward(const Interval& in, unsigned bits) {
  return {round_down_dyadic(in.lo, bits), round_up_dyadic(in.hi, bits)};
}

Interval power_enclosure(const Integer& base, const Rational& e, unsigned bits) {
  if (base < 1) throw PreconditionError("power_enclosure: base must be >= 1");
  const unsigned long v = exponent_part(e.get_den(), "denominator");
  const unsigned long u = exponent_part(e.get_num(), "numerator");
  const bool negative = sgn(e) < 0;
  const Integer base_u = ipow(base, u);
  if (v == 1) {
    return Interval::point(negative ? Rational(Integer(1), base_u) : Rational(base_u));
  }
  // r = floor((base^u * 2^(v*k))^(1/v)), so r/2^k <= base^(u/v) < (r+1)/2^k
  // and r >= 2^k because base^(u/v) >= 1.
  const unsigned long k = bits + 1;
  Integer scaled = base_u;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), v * k);
  Integer r;
  const bool exact = mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), v) != 0;
  Integer pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, k);
  Rational lo(r, pow2);
  lo.canonicalize();
  if (exact) {
    return Interval::point(negative ? Rational(1 / lo) : lo);
  }
  Rational hi(r + 1, pow2);
  hi.canonicalize();
  if (negative) return {Rational(1 / hi), Rational(1 / lo)};
  return {lo, hi};
}

}  // namespace dapprox
