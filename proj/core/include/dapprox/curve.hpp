#pragma once

// Passage between simultaneous approximation of (x, P(x) + alpha) and
// approximation of alpha by b/q^d under the congruence constraint.

#include <cstdint>
#include <optional>

#include "dapprox/alpha.hpp"
#include "dapprox/exact.hpp"
#include "dapprox/polynomial.hpp"

namespace dapprox {

/// c * base^exponent, compared exactly.
struct PowerRadius {
  Rational coefficient;
  Integer base;
  Rational exponent;

  /// magnitude < coefficient * base^exponent
  bool strictly_exceeds(const Rational& magnitude) const;
  Interval enclosure(unsigned bits = 64) const;
};

/// Certified K_M >= 1 + sup |P'| over [M, M+1].
struct DerivativeBound {
  std::int64_t interval_index = 0;
  Rational k_m;
};

/// One constrained approximation event |alpha - b/q^d| (< q^-tau, or the
/// lemma radius when produced by reduce_simultaneous).
struct ConstrainedHit {
  std::uint64_t q = 1;
  Integer b;
  std::optional<Integer> p;
  Rational error;  // |alpha - b / q^d|
  Integer gcd_bq;  // gcd(|b|, q), with gcd(0, q) = q

  friend bool operator==(const ConstrainedHit&, const ConstrainedHit&) = default;
};

Integer gcd_with_modulus(const Integer& b, std::uint64_t q);

inline Integer eval_scaled(const IntPolynomial& poly, const Integer& p, const Integer& q) {
  return poly.eval_scaled(p, q);
}

/// 1 + sum_k k |c_k| max(|M|, |M+1|)^(k-1), which dominates 1 + sup |P'| on
/// [M, M+1].
DerivativeBound derivative_sup_bound(const IntPolynomial& poly, std::int64_t interval_index);

/// Given |x - p/q| < q^-tau and |P(x) + alpha - r/q| < q^-tau with x in
/// [M, M+1], returns the hit b' = r q^(d-1) - q^d P(p/q). The resulting error
/// is checked against K_M q^-tau. Throws PreconditionError naming the first
/// failed input inequality.
ConstrainedHit reduce_simultaneous(const IntPolynomial& poly, const AlphaValue& alpha,
                                   const Rational& x, const Integer& p, std::uint64_t q,
                                   const Integer& r, const Rational& tau,
                                   const DerivativeBound& bound);

struct LiftedApproximation {
  Integer r;
  PowerRadius radius;  // 2 K_M q^-tau
};

/// Partial converse: from b with b/q^d + P(p/q) in Z/q and |alpha - b/q^d| <
/// K_M q^-tau, returns r = q (b/q^d + P(p/q)) and the radius 2 K_M q^-tau
/// valid for every x within q^-tau of p/q.
LiftedApproximation lift_constrained(const IntPolynomial& poly, const AlphaValue& alpha,
                                     const Integer& b, std::uint64_t q, const Integer& p,
                                     const Rational& tau, const DerivativeBound& bound);

/// Whether b = -q^d P(p/q) (mod q^(d-1)).
bool satisfies_lift_congruence(const IntPolynomial& poly, const Integer& b, std::uint64_t q,
                               const Integer& p);

}  // namespace dapprox
