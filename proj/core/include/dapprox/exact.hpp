#pragma once

// Exact integer/rational helpers shared by every module. Nothing in here
// touches floating point except the explicit to_double() conversions used
// for reporting.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dapprox {

using Integer = mpz_class;
using Rational = mpq_class;

Integer to_integer(std::uint64_t v);
Integer to_integer(std::int64_t v);
std::uint64_t to_u64(const Integer& v);  // throws if out of range
Integer ipow(const Integer& base, unsigned long exponent);

/// num/den in canonical form (GMP's two-argument constructor does not reduce).
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "a", "a/b" or a finite decimal such as "0.25" into an exact
/// rational. Throws PreconditionError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Three-way comparison of x against base^e, with x >= 0, base >= 1 and any
/// rational exponent e = u/v. Decided by comparing x^v with base^u in exact
/// integers, so ties are resolved exactly.
int compare_to_power(const Rational& x, const Integer& base, const Rational& e);

inline bool less_than_power(const Rational& x, const Integer& base,
                            const Rational& e) {
  return compare_to_power(x, base, e) < 0;
}

/// Closed interval [lo, hi] of rationals. Used as a certified enclosure: every
/// operation on intervals keeps the true value inside.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& v) { return {v, v}; }

  bool is_point() const { return lo == hi; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }

  Interval& operator+=(const Interval& other);
  Interval scaled(const Rational& nonnegative_factor) const;

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// Rounds lo down and hi up to dyadic rationals carrying `bits` significant
/// bits. The result contains the input.
Interval round_outward(const Interval& in, unsigned bits);
Rational round_down_dyadic(const Rational& x, unsigned bits);
Rational round_up_dyadic(const Rational& x, unsigned bits);

/// Encloses base^e (base >= 1, e rational, any sign) with relative width at
/// most 2^-bits. Exact (a point) whenever base^e is rational.
Interval power_enclosure(const Integer& base, const Rational& e,
                         unsigned bits = 64);

}  // namespace dapprox
