#include "dapprox/counting.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "dapprox/arithmetic.hpp"
#include "dapprox/errors.hpp"
#include "dapprox/residues.hpp"

namespace dapprox {
namespace {

std::uint64_t abs_u64(std::int64_t a) {
  return a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
}

bool admissible(const Integer& b, std::uint64_t q, const Factorization& f,
                const ScanParams& params) {
  if (params.flags.coprime_to_d_ad) {
    if (std::gcd(q, abs_u64(params.a_d)) != 1) return false;
    if (std::gcd<std::uint64_t>(q, params.degree) != 1) return false;
  }
  if (params.flags.omega_max && distinct_prime_count(f) > *params.flags.omega_max) return false;
  if (!is_power_residue(b, f, params.degree, params.a_d)) return false;
  if (params.flags.primitive_only && !is_unit_power_residue(b, f, params.degree, params.a_d)) {
    return false;
  }
  return params.band.contains(gcd_with_modulus(b, q), q);
}

void validate(const ScanParams& params) {
  if (params.degree < 2) throw PreconditionError("degree d must be at least 2");
  if (params.a_d == 0) throw PreconditionError("a_d must be nonzero");
  if (params.qmin == 0) throw PreconditionError("qmin must be positive");
  if (sgn(params.tau) < 0) throw PreconditionError("tau must be nonnegative");
}

// Best admissible hit at q, if any.
std::optional<ConstrainedHit> best_hit_at(const AlphaValue& alpha, std::uint64_t q,
                                          const ScanParams& params) {
  const Integer qq = to_integer(q);
  const unsigned d = params.degree;
  const Integer qd = ipow(qq, d);
  const Rational center = alpha.value() * Rational(qd);  // q^d alpha
  Integer lo, hi;
  mpz_fdiv_q(lo.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
  if (params.tau < Rational(d)) {
    // Radius q^(d - tau) exceeds 1: widen by its upper enclosure.
    const Rational radius = power_enclosure(qq, Rational(Rational(d) - params.tau)).hi;
    Integer reach;
    mpz_cdiv_q(reach.get_mpz_t(), radius.get_num_mpz_t(), radius.get_den_mpz_t());
    lo -= reach;
    hi += reach;
  }
  // Distance test |alpha - b/q^d| < q^-tau; error = |q^d alpha - b| / q^d.
  const Factorization f = factorize(q);
  std::optional<ConstrainedHit> best;
  for (Integer b = lo; b <= hi; ++b) {
    const Rational error = abs(alpha.value() - make_rational(b, qd));
    if (!less_than_power(error, qq, Rational(-params.tau))) continue;
    if (best && best->error <= error) continue;
    if (!admissible(b, q, f, params)) continue;
    ConstrainedHit hit;
    hit.q = q;
    hit.b = b;
    hit.error = error;
    hit.error.canonicalize();
    hit.gcd_bq = gcd_with_modulus(b, q);
    best = std::move(hit);
  }
  return best;
}

}  // namespace

std::string CountFlags::describe(const GcdBand& band) const {
  std::string out = "residue";
  if (primitive_only) out += "+primitive";
  if (coprime_to_d_ad) out += "+coprime";
  if (omega_max) out += "+omega<=" + std::to_string(*omega_max);
  if (!band.is_full()) out += "+band";
  return out;
}

bool hit_admissible(const Integer& b, std::uint64_t q, const ScanParams& params) {
  validate(params);
  return admissible(b, q, factorize(q), params);
}

bool is_hit(const AlphaValue& alpha, const Integer& b, std::uint64_t q, const ScanParams& params) {
  validate(params);
  const Integer qq = to_integer(q);
  const Rational error = abs(alpha.value() - make_rational(b, ipow(qq, params.degree)));
  if (!less_than_power(error, qq, Rational(-params.tau))) return false;
  return admissible(b, q, factorize(q), params);
}

std::vector<ConstrainedHit> find_hits(const AlphaValue& alpha, const ScanParams& params) {
  validate(params);
  if (params.qmax < params.qmin) return {};
  const std::uint64_t span = params.qmax - params.qmin + 1;
  const unsigned threads = std::max(1u, std::min<unsigned>(params.threads, 64));
  const std::uint64_t chunk_count = std::min<std::uint64_t>(span, std::uint64_t{threads} * 8);
  std::vector<std::vector<ConstrainedHit>> chunks(chunk_count);
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t lo = params.qmin + span * c / chunk_count;
    const std::uint64_t hi = params.qmin + span * (c + 1) / chunk_count;  // exclusive
    for (std::uint64_t q = lo; q < hi; ++q) {
      if (auto hit = best_hit_at(alpha, q, params)) chunks[c].push_back(std::move(*hit));
    }
  };
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunk_count; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < chunk_count; c += threads) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<ConstrainedHit> out;
  for (auto& c : chunks) {
    for (auto& h : c) out.push_back(std::move(h));
  }
  return out;
}

void attach_roots(std::vector<ConstrainedHit>& hits, const IntPolynomial& poly,
                  std::uint64_t threshold) {
  const unsigned d = poly.degree();
  const std::int64_t a_d = poly.a_d();
  const Integer a = to_integer(a_d);
  for (auto& hit : hits) {
    if (hit.q > threshold) continue;
    if (count_solutions(hit.b, hit.q, d, a_d) == 0) continue;
    const Integer qq = to_integer(hit.q);
    std::optional<Integer> root;
    for (std::uint64_t p = 0; p < hit.q; ++p) {
      const Integer diff = a * ipow(to_integer(p), d) - hit.b;
      if (mpz_divisible_p(diff.get_mpz_t(), qq.get_mpz_t())) {
        root = to_integer(p);
        break;
      }
    }
    if (!root) continue;
    Integer g;
    const Integer unit_test = *root * static_cast<unsigned long>(d) * a;
    mpz_gcd(g.get_mpz_t(), unit_test.get_mpz_t(), qq.get_mpz_t());
    hit.p = g == 1 ? hensel_lift(*root, hit.b, hit.q, poly) : *root;
  }
}

std::string_view to_string(CountReading reading) {
  return reading == CountReading::kPowerAtMost ? "q^d<=Q" : "q<=Q";
}

std::uint64_t denominator_limit(std::uint64_t big_q, unsigned d, CountReading reading) {
  if (reading == CountReading::kDenominatorAtMost) return big_q;
  Integer r;
  mpz_root(r.get_mpz_t(), to_integer(big_q).get_mpz_t(), d);
  return to_u64(r);
}

std::uint64_t counting_function(const AlphaValue& alpha, ScanParams params, std::uint64_t big_q,
                                CountReading reading) {
  if (big_q == 0) throw PreconditionError("Q must be positive");
  params.qmin = 1;
  params.qmax = denominator_limit(big_q, params.degree, reading);
  return find_hits(alpha, params).size();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> count_from_hits(
    const std::vector<ConstrainedHit>& hits, const std::vector<std::uint64_t>& schedule,
    unsigned d, CountReading reading) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  out.reserve(schedule.size());
  for (std::uint64_t big_q : schedule) {
    const std::uint64_t limit = denominator_limit(big_q, d, reading);
    const auto it = std::upper_bound(hits.begin(), hits.end(), limit,
                                     [](std::uint64_t v, const ConstrainedHit& h) { return v < h.q; });
    out.emplace_back(big_q, static_cast<std::uint64_t>(it - hits.begin()));
  }
  return out;
}

CountCurve count_curve(const AlphaValue& alpha, const ScanParams& params,
                       const std::vector<std::uint64_t>& schedule, CountReading reading) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] == 0 || (i > 0 && schedule[i] <= schedule[i - 1])) {
      throw PreconditionError("Q schedule must be positive and strictly increasing");
    }
  }
  CountCurve curve;
  curve.params = params;
  curve.reading = reading;
  if (schedule.empty()) return curve;
  ScanParams scan = params;
  scan.qmin = 1;
  scan.qmax = denominator_limit(schedule.back(), params.degree, reading);
  curve.samples = count_from_hits(find_hits(alpha, scan), schedule, params.degree, reading);
  return curve;
}

PhiPsi phi_psi_sums(const std::function<Interval(std::uint64_t)>& measure, std::uint64_t big_q) {
  if (big_q == 0) throw PreconditionError("Q must be positive");
  PhiPsi out{Interval::point(0), Interval::point(0)};
  for (std::uint64_t q = 1; q <= big_q; ++q) {
    const Interval m = measure(q);
    out.phi += m;
    out.psi += m.scaled(Rational(to_integer(divisor_count(factorize(q)))));
  }
  return out;
}

}  // namespace dapprox
