#pragma once

// Scanning for constrained approximations |alpha - b/q^d| < q^-tau with
// b mod q in a_d G_d(q), the counting function N(Q, alpha, eps, delta), and
// the Phi/Psi comparison sums.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dapprox/alpha.hpp"
#include "dapprox/covers.hpp"
#include "dapprox/curve.hpp"
#include "dapprox/exact.hpp"
#include "dapprox/polynomial.hpp"

namespace dapprox {

struct CountFlags {
  /// Require b in a_d G_d^x(q), i.e. b = a_d m^d with m a unit mod q.
  bool primitive_only = false;
  /// Require gcd(q, d a_d) = 1.
  bool coprime_to_d_ad = false;
  /// Require omega(q) <= omega_max.
  std::optional<unsigned> omega_max;

  /// Names of the active checks joined by '+', always led by "residue" (and
  /// "band" when a band is in force); used as the flags_passed column.
  std::string describe(const GcdBand& band) const;

  friend bool operator==(const CountFlags&, const CountFlags&) = default;
};

struct ScanParams {
  unsigned degree = 2;
  std::int64_t a_d = 1;
  Rational tau = 3;
  GcdBand band = GcdBand::full();
  std::uint64_t qmin = 1;
  std::uint64_t qmax = 1;
  CountFlags flags;
  unsigned threads = 1;
};

/// Whether b at q passes every admissibility condition except the distance
/// test: residue class, primitive/unit class, coprimality, omega and band.
bool hit_admissible(const Integer& b, std::uint64_t q, const ScanParams& params);

/// The exact hit predicate for one (q, b).
bool is_hit(const AlphaValue& alpha, const Integer& b, std::uint64_t q, const ScanParams& params);

/// One hit per q in [qmin, qmax] at most: among the integers b with
/// |q^d alpha - b| < q^(d-tau) (the one or two nearest q^d alpha when
/// tau >= d) the admissible b of smallest error, ties to the smaller b.
/// Sorted by q; identical for every thread count.
std::vector<ConstrainedHit> find_hits(const AlphaValue& alpha, const ScanParams& params);

/// Fills ConstrainedHit::p where possible: the smallest p~ in [0, q) with
/// a_d p~^d = b (mod q), lifted to the full congruence for `poly` when
/// gcd(q, p~ d a_d) = 1. Left empty when q exceeds `threshold` or no root
/// exists.
void attach_roots(std::vector<ConstrainedHit>& hits, const IntPolynomial& poly,
                  std::uint64_t threshold = 100'000);

enum class CountReading {
  kPowerAtMost,        // q^d <= Q
  kDenominatorAtMost,  // q <= Q
};

std::string_view to_string(CountReading reading);

/// Largest q admitted at cutoff Q under the reading.
std::uint64_t denominator_limit(std::uint64_t big_q, unsigned d, CountReading reading);

/// N(Q, alpha, eps, delta): the number of q admitted at cutoff Q that carry
/// a hit. params.qmin/qmax are ignored.
std::uint64_t counting_function(const AlphaValue& alpha, ScanParams params, std::uint64_t big_q,
                                CountReading reading = CountReading::kPowerAtMost);

struct CountCurve {
  ScanParams params;
  CountReading reading = CountReading::kPowerAtMost;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;  // (Q, N), sorted by Q
};

/// Counting function sampled along an increasing Q schedule from one scan.
CountCurve count_curve(const AlphaValue& alpha, const ScanParams& params,
                       const std::vector<std::uint64_t>& schedule,
                       CountReading reading = CountReading::kPowerAtMost);

/// The same, from a precomputed sorted hit list.
std::vector<std::pair<std::uint64_t, std::uint64_t>> count_from_hits(
    const std::vector<ConstrainedHit>& hits, const std::vector<std::uint64_t>& schedule,
    unsigned d, CountReading reading);

struct PhiPsi {
  Interval phi;  // sum of lambda(I_q)
  Interval psi;  // sum of lambda(I_q) tau(q)
};

/// Phi(Q) and Psi(Q) for a per-q measure source.
PhiPsi phi_psi_sums(const std::function<Interval(std::uint64_t)>& measure, std::uint64_t big_q);

}  // namespace dapprox
