#pragma once

// Measures of the limsup covers J*_tau(q) = union of (b/q^d - q^-tau,
// b/q^d + q^-tau) over 0 <= b < q^d with b mod q in a_d G_d(q), their
// gcd-banded variants, tail sums, and the restricted series
// L_z(s) = sum over gcd(q, n) = 1 of z^omega(q) / q^s.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dapprox/arithmetic.hpp"
#include "dapprox/exact.hpp"

namespace dapprox {

/// Either no constraint on gcd(b, q), or q^eps <= gcd(b, q) < q^(eps+delta)
/// with 0 <= eps < eps + delta <= 1.
class GcdBand {
 public:
  static GcdBand full() { return GcdBand(); }
  /// Throws PreconditionError unless 0 <= eps, delta > 0, eps + delta <= 1.
  static GcdBand range(const Rational& eps, const Rational& delta);
  /// "full" or "eps,delta" with each side a rational or decimal.
  static GcdBand parse(std::string_view text);

  bool is_full() const { return full_; }
  const Rational& epsilon() const { return eps_; }
  const Rational& delta() const { return delta_; }

  /// Whether g (a positive divisor-sized value) satisfies the band for q.
  bool contains(const Integer& g, std::uint64_t q) const;
  /// Divisors a of q with q^eps <= a < q^(eps+delta); every divisor when full.
  std::vector<std::uint64_t> admissible_divisors(const Factorization& q) const;

  std::string to_string() const;

  friend bool operator==(const GcdBand&, const GcdBand&) = default;

 private:
  GcdBand() = default;
  bool full_ = true;
  Rational eps_ = 0;
  Rational delta_ = 1;
};

enum class CountSource { kClosedForm, kOracle, kFormula };
std::string_view to_string(CountSource source);

struct CoverRecord {
  std::uint64_t q = 1;
  Integer center_count;  // |centers| = (residue count) * q^(d-1)
  CountSource count_source = CountSource::kClosedForm;
  Interval measure;      // 2 * center_count / q^tau, a point when tau is an integer
};

struct CoverOptions {
  /// Banded counts are enumerated for q up to this bound and taken from the
  /// divisor-sum formula above it.
  std::uint64_t oracle_threshold = 10'000;
  /// Relative precision of q^-tau enclosures and of outward rounding.
  unsigned bits = 64;
  /// Round each term outward to a dyadic rational before summation; keeps
  /// long sums cheap at the price of a (certified) nonzero width.
  bool round_terms = false;
};

struct BandedCount {
  std::optional<std::uint64_t> oracle;  // absent above the enumeration threshold
  std::uint64_t formula = 0;
};

/// Residue-level center count |B_P(q, eps, delta)|: the enumerated count of
/// x in a_d G_d(q) with gcd(x, q) in the band, and the divisor-sum formula
/// sum over admissible a | q of r_d(q/a). For the full band both are
/// r_d(q / gcd(q, a_d)).
BandedCount banded_center_count(std::uint64_t q, const GcdBand& band, unsigned d,
                                std::int64_t a_d,
                                std::uint64_t oracle_threshold = 1'000'000);

/// Refuses tau <= d.
CoverRecord cover_measure(std::uint64_t q, const Rational& tau, unsigned d, std::int64_t a_d,
                          const GcdBand& band = GcdBand::full(), const CoverOptions& options = {});

struct UnionMeasure {
  Rational measure;
  bool overlaps = false;  // some neighbouring centers are closer than 2 q^-tau
};

/// Exact Lebesgue measure of J*_tau(q) (integer tau only), merging
/// overlapping intervals. Intended for small q.
UnionMeasure exact_union_measure(std::uint64_t q, const Rational& tau, unsigned d,
                                 std::int64_t a_d, std::uint64_t threshold = 1'000'000);

/// Sum of cover measures for q in [n, big_q]; the empty sum when n > big_q.
Interval tail_sum(const Rational& tau, unsigned d, std::int64_t a_d, std::uint64_t n,
                  std::uint64_t big_q, const GcdBand& band = GcdBand::full(),
                  const CoverOptions& options = {});

/// Cumulative tail sums from n up to each entry of an increasing schedule.
/// Work is split over disjoint q-ranges; the result is independent of
/// `threads` because interval addition is exact.
std::vector<Interval> tail_sum_schedule(const Rational& tau, unsigned d, std::int64_t a_d,
                                        std::uint64_t n, const std::vector<std::uint64_t>& schedule,
                                        const GcdBand& band = GcdBand::full(),
                                        const CoverOptions& options = {}, unsigned threads = 1);

/// Partial sum of L_z(s) over q <= big_q with gcd(q, n) = 1.
Interval restricted_series_partial(const Rational& z, const Rational& s, std::uint64_t n,
                                   std::uint64_t big_q, unsigned bits = 64);

std::vector<Interval> restricted_series_schedule(const Rational& z, const Rational& s,
                                                 std::uint64_t n,
                                                 const std::vector<std::uint64_t>& schedule,
                                                 unsigned bits = 64, unsigned threads = 1);

/// The Euler product of L_z(2) over primes up to prime_bound not dividing n:
/// prod (1 + z / (p^2 - 1)). Used only as a cross-check.
double euler_product_at_two(double z, std::uint64_t n, std::uint64_t prime_bound);

}  // namespace dapprox
