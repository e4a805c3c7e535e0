#include "dapprox/residues.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dapprox/errors.hpp"
#include "dapprox/modular.hpp"

namespace dapprox {
namespace {

u64 prime_power(u64 p, unsigned k) {
  u64 out = 1;
  for (unsigned i = 0; i < k; ++i) out *= p;
  return out;
}

u64 phi_prime_power(u64 p, unsigned k) { return prime_power(p, k - 1) * (p - 1); }

unsigned valuation_u64(u64 x, u64 p) {
  unsigned v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

u64 abs_u64(std::int64_t a) {
  return a < 0 ? static_cast<u64>(-(a + 1)) + 1 : static_cast<u64>(a);
}

unsigned nu2(unsigned d) {
  unsigned v = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++v;
  }
  return v;
}

// Whether the unit c (mod p^j, j >= 1) is a d-th power of a unit.
bool is_unit_dth_power(u64 c, u64 p, unsigned j, unsigned d) {
  const u64 pj = prime_power(p, j);
  if (pj == 1) return true;
  if (p != 2) {
    const u64 phi = phi_prime_power(p, j);
    return pow_mod(c, phi / std::gcd<u64>(d, phi), pj) == 1;
  }
  if (d % 2 == 1) return true;
  const unsigned level = std::min(j, nu2(d) + 2);
  const u64 mask = prime_power(2, level) - 1;
  return (c & mask) == 1;
}

void require_degree(unsigned d) {
  if (d < 2) throw PreconditionError("degree d must be at least 2");
}

void require_ad(std::int64_t a_d) {
  if (a_d == 0) throw PreconditionError("a_d must be nonzero");
}

void require_threshold(u64 q, u64 threshold) {
  if (q == 0) throw PreconditionError("modulus must be positive");
  if (q > threshold) {
    throw ThresholdExceeded("modulus " + std::to_string(q) + " exceeds enumeration threshold " +
                            std::to_string(threshold));
  }
}

u64 b_mod(const Integer& b, u64 m) {
  return mpz_fdiv_ui(b.get_mpz_t(), static_cast<unsigned long>(m));
}

// Per-prime-power data for the membership and counting routines.
struct LocalClass {
  u64 p;
  unsigned k;
  u64 pk;
  u64 b;         // b mod p^k
  unsigned v;    // valuation of a_d (uncapped)
  u64 ad_unit;   // a_d / p^v mod p^k
};

LocalClass local_class(const Integer& b, const PrimePower& pp, std::int64_t a_d) {
  LocalClass lc;
  lc.p = pp.prime;
  lc.k = pp.exponent;
  lc.pk = prime_power(lc.p, lc.k);
  lc.b = b_mod(b, lc.pk);
  const u64 mag = abs_u64(a_d);
  lc.v = valuation_u64(mag, lc.p);
  u64 unit = mag;
  for (unsigned i = 0; i < lc.v; ++i) unit /= lc.p;
  unit %= lc.pk;
  if (a_d < 0) unit = (lc.pk - unit) % lc.pk;
  lc.ad_unit = unit;
  return lc;
}

// For b != 0 (mod p^k) with s = nu(b): the root class t and whether the unit
// part is a d-th power, or nullopt when no root exists.
std::optional<unsigned> local_root_class(const LocalClass& lc, unsigned d) {
  const unsigned s = valuation_u64(lc.b, lc.p);
  if (s < lc.v || (s - lc.v) % d != 0) return std::nullopt;
  const unsigned j = lc.k - s;
  const u64 pj = prime_power(lc.p, j);
  u64 bu = lc.b;
  for (unsigned i = 0; i < s; ++i) bu /= lc.p;
  const auto inv = inverse_mod(lc.ad_unit % pj, pj);
  if (!inv) throw std::logic_error("unit part of a_d is not invertible");
  const u64 c = mul_mod(bu % pj, *inv, pj);
  if (!is_unit_dth_power(c, lc.p, j, d)) return std::nullopt;
  return (s - lc.v) / d;
}

}  // namespace

bool ResidueSet::contains(std::uint64_t residue) const {
  return std::binary_search(elements.begin(), elements.end(), residue);
}

std::uint64_t unity_roots_prime_power(std::uint64_t p, unsigned k, unsigned d) {
  require_degree(d);
  if (k == 0) return 1;
  const u64 phi = phi_prime_power(p, k);
  if (d % 2 == 0 && p == 2 && k >= 3) return std::gcd<u64>(2 * u64{d}, phi);
  return std::gcd<u64>(d, phi);
}

std::uint64_t unit_power_count_prime_power(std::uint64_t p, unsigned k, unsigned d) {
  if (k == 0) return 1;
  return phi_prime_power(p, k) / unity_roots_prime_power(p, k, d);
}

std::uint64_t power_residue_count_prime_power(std::uint64_t p, unsigned k, unsigned d) {
  require_degree(d);
  // Zero plus, for each valuation class s with k - s d >= 1, the unit powers
  // modulo p^(k - s d).
  u64 total = 1;
  for (unsigned s = 0; s * d < k; ++s) total += unit_power_count_prime_power(p, k - s * d, d);
  return total;
}

std::uint64_t unity_roots_count(const Factorization& q, unsigned d) {
  u64 out = 1;
  for (const auto& f : q.factors()) out *= unity_roots_prime_power(f.prime, f.exponent, d);
  return out;
}

std::uint64_t unit_power_count(const Factorization& q, unsigned d) {
  require_degree(d);
  u64 out = 1;
  for (const auto& f : q.factors()) out *= unit_power_count_prime_power(f.prime, f.exponent, d);
  return out;
}

std::uint64_t power_residue_count(const Factorization& q, unsigned d) {
  require_degree(d);
  u64 out = 1;
  for (const auto& f : q.factors()) out *= power_residue_count_prime_power(f.prime, f.exponent, d);
  return out;
}

PowerResidueProfile power_residue_profile(std::uint64_t q, unsigned d) {
  const Factorization f = factorize(q);
  return {q, d, unity_roots_count(f, d), unit_power_count(f, d), power_residue_count(f, d)};
}

std::uint64_t scaled_power_residue_count(std::uint64_t q, unsigned d, std::int64_t a_d) {
  require_ad(a_d);
  if (q == 0) throw PreconditionError("modulus must be positive");
  const u64 g = std::gcd(q, abs_u64(a_d));
  return power_residue_count(q / g, d);
}

ResidueSet power_residues(std::uint64_t q, unsigned d, std::uint64_t threshold) {
  require_degree(d);
  require_threshold(q, threshold);
  std::vector<char> seen(q, 0);
  for (u64 m = 0; m < q; ++m) seen[pow_mod(m, d, q)] = 1;
  ResidueSet out{q, {}};
  for (u64 x = 0; x < q; ++x)
    if (seen[x]) out.elements.push_back(x);
  return out;
}

ResidueSet unit_power_residues(std::uint64_t q, unsigned d, std::uint64_t threshold) {
  require_degree(d);
  require_threshold(q, threshold);
  std::vector<char> seen(q, 0);
  for (u64 m = 0; m < q; ++m)
    if (std::gcd(m, q) == 1) seen[pow_mod(m, d, q)] = 1;
  ResidueSet out{q, {}};
  for (u64 x = 0; x < q; ++x)
    if (seen[x]) out.elements.push_back(x);
  return out;
}

ResidueSet scaled_power_residues(std::uint64_t q, unsigned d, std::int64_t a_d,
                                 std::uint64_t threshold) {
  require_ad(a_d);
  const ResidueSet base = power_residues(q, d, threshold);
  const u64 a = reduce_signed(a_d, q);
  std::vector<char> seen(q, 0);
  for (u64 x : base.elements) seen[mul_mod(a, x, q)] = 1;
  ResidueSet out{q, {}};
  for (u64 x = 0; x < q; ++x)
    if (seen[x]) out.elements.push_back(x);
  return out;
}

std::uint64_t unity_roots_count_enumerated(std::uint64_t q, unsigned d, std::uint64_t threshold) {
  require_degree(d);
  require_threshold(q, threshold);
  const u64 one = 1 % q;
  u64 count = 0;
  for (u64 m = 0; m < q; ++m)
    if (pow_mod(m, d, q) == one) ++count;
  return count;
}

PowerResidueProfile power_residue_profile_enumerated(std::uint64_t q, unsigned d,
                                                     std::uint64_t threshold) {
  return {q, d, unity_roots_count_enumerated(q, d, threshold),
          unit_power_residues(q, d, threshold).size(), power_residues(q, d, threshold).size()};
}

std::uint64_t count_solutions_enumerated(const Integer& b, std::uint64_t q, unsigned d,
                                         std::int64_t a_d, std::uint64_t threshold) {
  require_degree(d);
  require_ad(a_d);
  require_threshold(q, threshold);
  const u64 target = b_mod(b, q);
  const u64 a = reduce_signed(a_d, q);
  u64 count = 0;
  for (u64 p = 0; p < q; ++p)
    if (mul_mod(a, pow_mod(p, d, q), q) == target) ++count;
  return count;
}

bool is_power_residue(const Integer& b, const Factorization& q, unsigned d, std::int64_t a_d) {
  require_degree(d);
  require_ad(a_d);
  for (const auto& pp : q.factors()) {
    const LocalClass lc = local_class(b, pp, a_d);
    if (lc.b == 0) continue;
    if (!local_root_class(lc, d)) return false;
  }
  return true;
}

bool is_unit_power_residue(const Integer& b, const Factorization& q, unsigned d,
                           std::int64_t a_d) {
  require_degree(d);
  require_ad(a_d);
  for (const auto& pp : q.factors()) {
    const LocalClass lc = local_class(b, pp, a_d);
    if (lc.v >= lc.k) {
      if (lc.b != 0) return false;
      continue;
    }
    if (lc.b == 0 || valuation_u64(lc.b, lc.p) != lc.v) return false;
    if (!local_root_class(lc, d)) return false;
  }
  return true;
}

std::uint64_t count_solutions(const Integer& b, const Factorization& q, unsigned d,
                              std::int64_t a_d) {
  require_degree(d);
  require_ad(a_d);
  u64 total = 1;
  for (const auto& pp : q.factors()) {
    const LocalClass lc = local_class(b, pp, a_d);
    if (lc.b == 0) {
      // a_d x^d = 0 iff v + d nu(x) >= k.
      const unsigned need = lc.k > lc.v ? lc.k - lc.v : 0;
      const unsigned t0 = (need + d - 1) / d;
      total *= prime_power(lc.p, lc.k - std::min(t0, lc.k));
      continue;
    }
    const auto t = local_root_class(lc, d);
    if (!t) return 0;
    const unsigned s = valuation_u64(lc.b, lc.p);
    total *= unity_roots_prime_power(lc.p, lc.k - s, d) * prime_power(lc.p, s - *t);
  }
  return total;
}

Integer hensel_lift_prime_power(const Integer& p_tilde, const Integer& b, std::uint64_t q,
                                std::uint64_t prime, unsigned k, const IntPolynomial& poly) {
  const unsigned d = poly.degree();
  const unsigned target = k * (d - 1);
  const Integer qq = to_integer(q);
  const Integer pi = to_integer(prime);
  Integer x;
  mpz_fdiv_r(x.get_mpz_t(), p_tilde.get_mpz_t(), ipow(pi, k).get_mpz_t());
  unsigned precision = k;
  while (precision < target) {
    precision = std::min(2 * precision, target);
    const Integer modulus = ipow(pi, precision);
    const Integer fx = -poly.eval_scaled(x, qq) - b;
    Integer dfx = -poly.eval_scaled_derivative(x, qq);
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), modulus.get_mpz_t()) == 0) {
      throw PreconditionError("hensel_lift: derivative is not a unit at prime " +
                              std::to_string(prime));
    }
    x = x - fx * inv;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  }
  const Integer modulus = ipow(pi, target);
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  const Integer check = -poly.eval_scaled(x, qq) - b;
  if (!mpz_divisible_p(check.get_mpz_t(), modulus.get_mpz_t())) {
    throw std::logic_error("hensel_lift: lifted root fails the congruence");
  }
  return x;
}

Integer hensel_lift(const Integer& p_tilde, const Integer& b, std::uint64_t q,
                    const IntPolynomial& poly) {
  if (q == 0) throw PreconditionError("hensel_lift: q must be positive");
  const unsigned d = poly.degree();
  const std::int64_t a_d = poly.a_d();
  const Integer qq = to_integer(q);
  Integer g;
  const Integer unit_test = p_tilde * static_cast<unsigned long>(d) * to_integer(a_d);
  mpz_gcd(g.get_mpz_t(), unit_test.get_mpz_t(), qq.get_mpz_t());
  if (g != 1) throw PreconditionError("hensel_lift: gcd(q, p~ d a_d) != 1");
  const Integer residual = to_integer(a_d) * ipow(p_tilde, d) - b;
  if (!mpz_divisible_p(residual.get_mpz_t(), qq.get_mpz_t())) {
    throw PreconditionError("hensel_lift: a_d p~^d != b (mod q)");
  }
  Integer x = 0;
  Integer modulus = 1;
  const Factorization f = factorize(q);
  for (const auto& pp : f.factors()) {
    const Integer xi = hensel_lift_prime_power(p_tilde, b, q, pp.prime, pp.exponent, poly);
    const Integer mi = ipow(to_integer(pp.prime), pp.exponent * (d - 1));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), mi.get_mpz_t());
    Integer step = (xi - x) * inv;
    mpz_fdiv_r(step.get_mpz_t(), step.get_mpz_t(), mi.get_mpz_t());
    x += modulus * step;
    modulus *= mi;
  }
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return x;
}

}  // namespace dapprox
