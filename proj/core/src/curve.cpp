#include "dapprox/curve.hpp"

#include <algorithm>
#include <stdexcept>

#include "dapprox/errors.hpp"

namespace dapprox {

bool PowerRadius::strictly_exceeds(const Rational& magnitude) const {
  if (sgn(coefficient) <= 0) return false;
  return less_than_power(Rational(magnitude / coefficient), base, exponent);
}

Interval PowerRadius::enclosure(unsigned bits) const {
  return power_enclosure(base, exponent, bits).scaled(coefficient);
}

Integer gcd_with_modulus(const Integer& b, std::uint64_t q) {
  Integer g;
  const Integer qq = to_integer(q);
  mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), qq.get_mpz_t());
  return g;
}

DerivativeBound derivative_sup_bound(const IntPolynomial& poly, std::int64_t interval_index) {
  const Integer lo = abs(to_integer(interval_index));
  const Integer hi = abs(Integer(to_integer(interval_index) + 1));
  const Integer m = lo > hi ? lo : hi;
  Integer acc = 1;
  Integer mpow = 1;
  const auto coeffs = poly.coefficients();
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    acc += abs(coeffs[k]) * static_cast<unsigned long>(k) * mpow;
    mpow *= m;
  }
  return {interval_index, Rational(acc)};
}

ConstrainedHit reduce_simultaneous(const IntPolynomial& poly, const AlphaValue& alpha,
                                   const Rational& x, const Integer& p, std::uint64_t q,
                                   const Integer& r, const Rational& tau,
                                   const DerivativeBound& bound) {
  if (q == 0) throw PreconditionError("reduce_simultaneous: q must be positive");
  const Integer qq = to_integer(q);
  const Rational lo(to_integer(bound.interval_index));
  if (x < lo || x > lo + 1) {
    throw PreconditionError("reduce_simultaneous: x lies outside [M, M+1]");
  }
  const PowerRadius unit_radius{Rational(1), qq, Rational(-tau)};
  if (!unit_radius.strictly_exceeds(abs(x - make_rational(p, qq)))) {
    throw PreconditionError("reduce_simultaneous: |x - p/q| < q^-tau fails");
  }
  const Rational y_dev = poly.evaluate(x) + alpha.value() - make_rational(r, qq);
  if (!unit_radius.strictly_exceeds(abs(y_dev))) {
    throw PreconditionError("reduce_simultaneous: |P(x) + alpha - r/q| < q^-tau fails");
  }

  const unsigned d = poly.degree();
  const Integer qd = ipow(qq, d);
  ConstrainedHit hit;
  hit.q = q;
  hit.b = r * ipow(qq, d - 1) - poly.eval_scaled(p, qq);
  hit.p = p;
  hit.error = abs(alpha.value() - make_rational(hit.b, qd));
  hit.gcd_bq = gcd_with_modulus(hit.b, q);

  const PowerRadius lemma_radius{bound.k_m, qq, Rational(-tau)};
  if (!lemma_radius.strictly_exceeds(hit.error)) {
    throw std::logic_error("reduce_simultaneous: error exceeds K_M q^-tau; bound is not valid");
  }
  return hit;
}

bool satisfies_lift_congruence(const IntPolynomial& poly, const Integer& b, std::uint64_t q,
                               const Integer& p) {
  const Integer qq = to_integer(q);
  const Integer modulus = ipow(qq, poly.degree() - 1);
  const Integer total = b + poly.eval_scaled(p, qq);
  return mpz_divisible_p(total.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

LiftedApproximation lift_constrained(const IntPolynomial& poly, const AlphaValue& alpha,
                                     const Integer& b, std::uint64_t q, const Integer& p,
                                     const Rational& tau, const DerivativeBound& bound) {
  if (q == 0) throw PreconditionError("lift_constrained: q must be positive");
  if (!satisfies_lift_congruence(poly, b, q, p)) {
    throw PreconditionError("lift_constrained: b = -q^d P(p/q) (mod q^(d-1)) not satisfied");
  }
  const Integer qq = to_integer(q);
  const unsigned d = poly.degree();
  const Rational error = abs(alpha.value() - make_rational(b, ipow(qq, d)));
  const PowerRadius lemma_radius{bound.k_m, qq, Rational(-tau)};
  if (!lemma_radius.strictly_exceeds(error)) {
    throw PreconditionError("lift_constrained: |alpha - b/q^d| < K_M q^-tau fails");
  }
  LiftedApproximation out;
  mpz_divexact(out.r.get_mpz_t(), Integer(b + poly.eval_scaled(p, qq)).get_mpz_t(),
               ipow(qq, d - 1).get_mpz_t());
  out.radius = PowerRadius{Rational(2 * bound.k_m), qq, Rational(-tau)};
  return out;
}

}  // namespace dapprox
