#pragma once

// d-th power residues modulo q: the counts u_d, e_d, r_d in closed form,
// brute-force enumerators that serve as their oracle, membership and solution
// counts for b = a_d p^d (mod q), and the Hensel lift to the full congruence
// b = -q^d P(p/q) (mod q^(d-1)).

#include <cstdint>
#include <vector>

#include "dapprox/arithmetic.hpp"
#include "dapprox/exact.hpp"
#include "dapprox/polynomial.hpp"

namespace dapprox {

inline constexpr std::uint64_t kEnumerationThreshold = 1'000'000;

struct PowerResidueProfile {
  std::uint64_t modulus = 1;
  unsigned degree = 2;
  std::uint64_t u = 1;  // d-th roots of unity
  std::uint64_t e = 1;  // distinct d-th powers of units
  std::uint64_t r = 1;  // distinct d-th powers

  friend bool operator==(const PowerResidueProfile&, const PowerResidueProfile&) = default;
};

struct ResidueSet {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> elements;  // strictly increasing, all < modulus

  std::size_t size() const { return elements.size(); }
  bool contains(std::uint64_t residue) const;
};

// Closed forms on a prime power p^k (k >= 1).
std::uint64_t unity_roots_prime_power(std::uint64_t p, unsigned k, unsigned d);
std::uint64_t unit_power_count_prime_power(std::uint64_t p, unsigned k, unsigned d);
std::uint64_t power_residue_count_prime_power(std::uint64_t p, unsigned k, unsigned d);

// Closed forms, extended multiplicatively. All equal 1 at q = 1.
std::uint64_t unity_roots_count(const Factorization& q, unsigned d);
std::uint64_t unit_power_count(const Factorization& q, unsigned d);
std::uint64_t power_residue_count(const Factorization& q, unsigned d);

inline std::uint64_t unity_roots_count(std::uint64_t q, unsigned d) {
  return unity_roots_count(factorize(q), d);
}
inline std::uint64_t unit_power_count(std::uint64_t q, unsigned d) {
  return unit_power_count(factorize(q), d);
}
inline std::uint64_t power_residue_count(std::uint64_t q, unsigned d) {
  return power_residue_count(factorize(q), d);
}

PowerResidueProfile power_residue_profile(std::uint64_t q, unsigned d);

/// |a_d G_d(q)| = r_d(q / gcd(q, a_d)).
std::uint64_t scaled_power_residue_count(std::uint64_t q, unsigned d, std::int64_t a_d);

// Enumerators. Each refuses moduli above `threshold` with ThresholdExceeded.
ResidueSet power_residues(std::uint64_t q, unsigned d,
                          std::uint64_t threshold = kEnumerationThreshold);
ResidueSet unit_power_residues(std::uint64_t q, unsigned d,
                               std::uint64_t threshold = kEnumerationThreshold);
ResidueSet scaled_power_residues(std::uint64_t q, unsigned d, std::int64_t a_d,
                                 std::uint64_t threshold = kEnumerationThreshold);
std::uint64_t unity_roots_count_enumerated(std::uint64_t q, unsigned d,
                                           std::uint64_t threshold = kEnumerationThreshold);
PowerResidueProfile power_residue_profile_enumerated(
    std::uint64_t q, unsigned d, std::uint64_t threshold = kEnumerationThreshold);
std::uint64_t count_solutions_enumerated(const Integer& b, std::uint64_t q, unsigned d,
                                         std::int64_t a_d,
                                         std::uint64_t threshold = kEnumerationThreshold);

/// Whether some p has a_d p^d = b (mod q). Decided prime power by prime
/// power from the valuation class of b and a power test on its unit part.
bool is_power_residue(const Integer& b, const Factorization& q, unsigned d, std::int64_t a_d);
inline bool is_power_residue(const Integer& b, std::uint64_t q, unsigned d, std::int64_t a_d) {
  return is_power_residue(b, factorize(q), d, a_d);
}

/// Whether b = a_d m^d (mod q) for some unit m, i.e. b lies in a_d G_d^x(q).
bool is_unit_power_residue(const Integer& b, const Factorization& q, unsigned d,
                           std::int64_t a_d);
inline bool is_unit_power_residue(const Integer& b, std::uint64_t q, unsigned d,
                                  std::int64_t a_d) {
  return is_unit_power_residue(b, factorize(q), d, a_d);
}

/// #{p mod q : a_d p^d = b (mod q)}.
std::uint64_t count_solutions(const Integer& b, const Factorization& q, unsigned d,
                              std::int64_t a_d);
inline std::uint64_t count_solutions(const Integer& b, std::uint64_t q, unsigned d,
                                     std::int64_t a_d) {
  return count_solutions(b, factorize(q), d, a_d);
}

/// Lifts p~ with a_d p~^d = b (mod q) and gcd(q, p~ d a_d) = 1 to the unique
/// p in [0, q^(d-1)) with b = -q^d P(p/q) (mod q^(d-1)) and p = p~ (mod q).
/// `poly` must have degree d and leading coefficient -a_d. Throws
/// PreconditionError naming the failed condition.
Integer hensel_lift(const Integer& p_tilde, const Integer& b, std::uint64_t q,
                    const IntPolynomial& poly);

/// The Hensel step on one prime power: returns the root modulo
/// prime^(k (d-1)) above p~. Exposed for per-prime uniqueness checks.
Integer hensel_lift_prime_power(const Integer& p_tilde, const Integer& b, std::uint64_t q,
                                std::uint64_t prime, unsigned k, const IntPolynomial& poly);

}  // namespace dapprox
