#include "dapprox/covers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "dapprox/errors.hpp"
#include "dapprox/modular.hpp"
#include "dapprox/residues.hpp"

namespace dapprox {
namespace {

void require_increasing(const std::vector<std::uint64_t>& schedule) {
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) {
      throw PreconditionError("Q schedule must be strictly increasing");
    }
  }
}

Interval finish_term(const Interval& term, const CoverOptions& options) {
  return options.round_terms ? round_outward(term, options.bits) : term;
}

// Sums f(q) over [lo, hi] for each of `threads` contiguous chunks, then
// returns the per-schedule cumulative totals. f must be pure.
template <typename Term>
std::vector<Interval> cumulative_sums(std::uint64_t n, const std::vector<std::uint64_t>& schedule,
                                      unsigned threads, Term term) {
  require_increasing(schedule);
  // Segment i covers q in (schedule[i-1], schedule[i]] intersected with [n, inf).
  const std::size_t segments = schedule.size();
  std::vector<Interval> seg(segments, Interval::point(0));
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges(segments);
  for (std::size_t i = 0; i < segments; ++i) {
    const std::uint64_t lo = std::max<std::uint64_t>(n, i == 0 ? 1 : schedule[i - 1] + 1);
    ranges[i] = {lo, schedule[i]};
  }
  auto work = [&](std::size_t i) {
    Interval acc = Interval::point(0);
    for (std::uint64_t q = ranges[i].first; q <= ranges[i].second && q >= ranges[i].first; ++q) {
      acc += term(q);
    }
    seg[i] = acc;
  };
  threads = std::max(1u, threads);
  if (threads == 1 || segments == 1) {
    for (std::size_t i = 0; i < segments; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = segments; i-- > 0;) {
          if (i % threads == t) work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<Interval> out(segments);
  Interval running = Interval::point(0);
  for (std::size_t i = 0; i < segments; ++i) {
    running += seg[i];
    out[i] = running;
  }
  return out;
}

}  // namespace

GcdBand GcdBand::range(const Rational& eps, const Rational& delta) {
  if (sgn(eps) < 0) throw PreconditionError("band: eps must be nonnegative");
  if (sgn(delta) <= 0) throw PreconditionError("band: delta must be positive");
  if (eps + delta > 1) throw PreconditionError("band: eps + delta must not exceed 1");
  GcdBand band;
  band.full_ = false;
  band.eps_ = eps;
  band.delta_ = delta;
  return band;
}

GcdBand GcdBand::parse(std::string_view text) {
  if (text == "full" || text == "FULL") return full();
  const std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw PreconditionError("band must be 'full' or 'eps,delta', got '" + std::string(text) + "'");
  }
  return range(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

bool GcdBand::contains(const Integer& g, std::uint64_t q) const {
  if (full_) return true;
  const Integer base = to_integer(q);
  const Rational gr(g);
  return compare_to_power(gr, base, eps_) >= 0 && less_than_power(gr, base, eps_ + delta_);
}

std::vector<std::uint64_t> GcdBand::admissible_divisors(const Factorization& q) const {
  if (full_) return divisors(q);
  return divisors_in_range(q, RangeBound::power(q.value(), eps_),
                           RangeBound::power(q.value(), eps_ + delta_));
}

std::string GcdBand::to_string() const {
  if (full_) return "full";
  return dapprox::to_string(eps_) + "," + dapprox::to_string(delta_);
}

std::string_view to_string(CountSource source) {
  switch (source) {
    case CountSource::kClosedForm:
      return "closed_form";
    case CountSource::kOracle:
      return "oracle";
    case CountSource::kFormula:
      return "formula";
  }
  return "unknown";
}

BandedCount banded_center_count(std::uint64_t q, const GcdBand& band, unsigned d,
                                std::int64_t a_d, std::uint64_t oracle_threshold) {
  if (q == 0) throw PreconditionError("modulus must be positive");
  BandedCount out;
  const Factorization f = factorize(q);
  if (band.is_full()) {
    out.formula = scaled_power_residue_count(q, d, a_d);
  } else {
    for (std::uint64_t a : band.admissible_divisors(f)) out.formula += power_residue_count(q / a, d);
  }
  if (q <= oracle_threshold) {
    const ResidueSet set = scaled_power_residues(q, d, a_d, oracle_threshold);
    std::uint64_t count = 0;
    for (std::uint64_t x : set.elements) {
      const std::uint64_t g = std::gcd(x, q);  // gcd(0, q) = q
      if (band.contains(to_integer(g), q)) ++count;
    }
    out.oracle = count;
  }
  return out;
}

CoverRecord cover_measure(std::uint64_t q, const Rational& tau, unsigned d, std::int64_t a_d,
                          const GcdBand& band, const CoverOptions& options) {
  if (q == 0) throw PreconditionError("modulus must be positive");
  if (tau <= Rational(d)) throw PreconditionError("cover_measure requires tau > d");
  CoverRecord rec;
  rec.q = q;
  std::uint64_t residues = 0;
  if (band.is_full()) {
    residues = scaled_power_residue_count(q, d, a_d);
    rec.count_source = CountSource::kClosedForm;
  } else if (q <= options.oracle_threshold) {
    residues = *banded_center_count(q, band, d, a_d, options.oracle_threshold).oracle;
    rec.count_source = CountSource::kOracle;
  } else {
    residues = banded_center_count(q, band, d, a_d, 0).formula;
    rec.count_source = CountSource::kFormula;
  }
  const Integer qq = to_integer(q);
  rec.center_count = to_integer(residues) * ipow(qq, d - 1);
  const Interval radius = power_enclosure(qq, Rational(-tau), options.bits);
  rec.measure = finish_term(radius.scaled(Rational(2 * rec.center_count)), options);
  return rec;
}

UnionMeasure exact_union_measure(std::uint64_t q, const Rational& tau, unsigned d,
                                 std::int64_t a_d, std::uint64_t threshold) {
  if (tau.get_den() != 1) throw PreconditionError("exact_union_measure needs an integer tau");
  const ResidueSet set = scaled_power_residues(q, d, a_d, threshold);
  const Integer qq = to_integer(q);
  const Integer blocks = ipow(qq, d - 1);
  // Work in units of 1/q^d: centers are integers b, radius R = q^(d - tau).
  const Rational radius = power_enclosure(qq, Rational(Rational(d) - tau)).lo;
  const Rational width = 2 * radius;
  UnionMeasure out;
  Rational total = 0;
  Integer prev;
  bool first = true;
  for (Integer j = 0; j < blocks; ++j) {
    for (std::uint64_t x : set.elements) {
      const Integer b = j * qq + to_integer(x);
      if (first) {
        total += width;
        first = false;
      } else {
        const Rational gap(Integer(b - prev));
        if (gap < width) {
          out.overlaps = true;
          total += gap;
        } else {
          total += width;
        }
      }
      prev = b;
    }
  }
  out.measure = total / Rational(ipow(qq, d));
  return out;
}

Interval tail_sum(const Rational& tau, unsigned d, std::int64_t a_d, std::uint64_t n,
                  std::uint64_t big_q, const GcdBand& band, const CoverOptions& options) {
  if (tau <= Rational(d)) throw PreconditionError("tail_sum requires tau > d");
  Interval acc = Interval::point(0);
  for (std::uint64_t q = std::max<std::uint64_t>(n, 1); q <= big_q; ++q) {
    acc += cover_measure(q, tau, d, a_d, band, options).measure;
  }
  return acc;
}

std::vector<Interval> tail_sum_schedule(const Rational& tau, unsigned d, std::int64_t a_d,
                                        std::uint64_t n, const std::vector<std::uint64_t>& schedule,
                                        const GcdBand& band, const CoverOptions& options,
                                        unsigned threads) {
  if (tau <= Rational(d)) throw PreconditionError("tail_sum requires tau > d");
  return cumulative_sums(n, schedule, threads, [&](std::uint64_t q) {
    return cover_measure(q, tau, d, a_d, band, options).measure;
  });
}

Interval restricted_series_partial(const Rational& z, const Rational& s, std::uint64_t n,
                                   std::uint64_t big_q, unsigned bits) {
  return restricted_series_schedule(z, s, n, {big_q}, bits, 1).front();
}

std::vector<Interval> restricted_series_schedule(const Rational& z, const Rational& s,
                                                 std::uint64_t n,
                                                 const std::vector<std::uint64_t>& schedule,
                                                 unsigned bits, unsigned threads) {
  if (sgn(z) <= 0) throw PreconditionError("L_z: z must be positive");
  if (sgn(s) <= 0) throw PreconditionError("L_z: s must be positive");
  if (n == 0) throw PreconditionError("L_z: n must be positive");
  if (schedule.empty() || schedule.front() == 0) throw PreconditionError("L_z: Q must be >= 1");
  return cumulative_sums(1, schedule, threads, [&](std::uint64_t q) {
    if (std::gcd(q, n) != 1) return Interval::point(0);
    const unsigned w = distinct_prime_count(factorize(q));
    Rational zw = 1;
    for (unsigned i = 0; i < w; ++i) zw *= z;
    const Interval term = power_enclosure(to_integer(q), Rational(-s), bits).scaled(zw);
    return round_outward(term, bits);
  });
}

double euler_product_at_two(double z, std::uint64_t n, std::uint64_t prime_bound) {
  double product = 1.0;
  for (std::uint64_t p = 2; p <= prime_bound; ++p) {
    if (!is_prime_u64(p) || n % p == 0) continue;
    const double pp = static_cast<double>(p);
    product *= 1.0 + z / (pp * pp - 1.0);
  }
  return product;
}

}  // namespace dapprox
