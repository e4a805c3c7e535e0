#pragma once

// Factorization and the multiplicative functions built on it.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "dapprox/exact.hpp"

namespace dapprox {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  auto operator<=>(const PrimePower&) const = default;
};

/// Prime-power decomposition of a positive integer. Primes are strictly
/// increasing, every exponent is at least one, and the factor list of 1 is
/// empty.
class Factorization {
 public:
  Factorization() = default;

  /// Validates the invariants and recomputes the value; throws
  /// PreconditionError on unsorted primes, zero exponents, non-primes or
  /// 64-bit overflow.
  static Factorization from_factors(std::vector<PrimePower> factors);

  std::uint64_t value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool is_one() const { return factors_.empty(); }

  /// The prime-adic valuation of value(); zero when prime does not divide it.
  unsigned valuation(std::uint64_t prime) const;

  /// Product of two factorizations (the values need not be coprime).
  Factorization operator*(const Factorization& other) const;

  /// Multiplies the factors back out. Equals value() by construction; kept
  /// as an independent path for round-trip checks.
  Integer recompose() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  Factorization(std::uint64_t value, std::vector<PrimePower> factors)
      : value_(value), factors_(std::move(factors)) {}

  std::uint64_t value_ = 1;
  std::vector<PrimePower> factors_;

  friend class Factorizer;
};

/// Smallest-prime-factor sieve up to a fixed bound, with trial division,
/// deterministic Miller-Rabin and Pollard-Brent beyond it. Immutable after
/// construction and safe to share between threads.
class Factorizer {
 public:
  static constexpr std::uint64_t kDefaultSieveBound = std::uint64_t{1} << 24;

  explicit Factorizer(std::uint64_t sieve_bound = kDefaultSieveBound);

  /// Throws PreconditionError for n == 0.
  Factorization factorize(std::uint64_t n) const;

  std::uint64_t sieve_bound() const { return bound_; }

 private:
  void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) const;

  std::uint64_t bound_;
  // spf_[n] holds the smallest prime factor of composite n, 0 for primes;
  // every composite below 2^32 has its smallest factor below 2^16.
  std::vector<std::uint16_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Process-wide factorizer with the default sieve bound, built on first use.
const Factorizer& default_factorizer();

inline Factorization factorize(std::uint64_t n) {
  return default_factorizer().factorize(n);
}

std::uint64_t euler_phi(const Factorization& f);
std::uint64_t divisor_count(const Factorization& f);
unsigned distinct_prime_count(const Factorization& f);

/// All positive divisors in increasing order.
std::vector<std::uint64_t> divisors(const Factorization& f);

/// A real bound used for divisor ranges: either an exact rational or an exact
/// power base^e with rational e. Comparisons never materialize a float.
class RangeBound {
 public:
  static RangeBound rational(const Rational& value);
  static RangeBound power(std::uint64_t base, const Rational& exponent);

  /// bound <= a
  bool at_most(std::uint64_t a) const;
  /// a < bound
  bool exceeds(std::uint64_t a) const { return !at_most(a); }

 private:
  enum class Kind { kRational, kPower };
  RangeBound(Kind kind, Rational value, std::uint64_t base)
      : kind_(kind), value_(std::move(value)), base_(base) {}

  Kind kind_;
  Rational value_;  // the rational itself, or the exponent for kPower
  std::uint64_t base_;
};

/// Sorted divisors a of f.value() with lo <= a < hi.
std::vector<std::uint64_t> divisors_in_range(const Factorization& f,
                                             const RangeBound& lo,
                                             const RangeBound& hi);

}  // namespace dapprox
