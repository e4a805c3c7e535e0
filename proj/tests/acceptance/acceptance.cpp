// Acceptance checks. Each criterion prints exactly one line
//   criterion NN PASS|FAIL <name>: <detail> (<seconds>s)
// and the process exits nonzero if any selected criterion fails. Tolerances
// and runtime budgets are fixed below.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/random_instances.hpp"
#include "cli.hpp"
#include "dapprox/arithmetic.hpp"
#include "dapprox/covers.hpp"
#include "dapprox/curve.hpp"
#include "dapprox/experiments.hpp"
#include "dapprox/residues.hpp"

namespace dapprox {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fixed(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::uint64_t abs_u64(std::int64_t a) { return static_cast<std::uint64_t>(a < 0 ? -a : a); }

// ------------------------------------------------------------------ 1..6

Outcome closed_form_vs_oracle() {
  std::uint64_t checked = 0;
  for (std::uint64_t q = 1; q <= 5000; ++q) {
    for (unsigned d = 2; d <= 6; ++d) {
      const auto closed = power_residue_profile(q, d);
      const auto oracle = power_residue_profile_enumerated(q, d);
      if (!(closed == oracle)) {
        return {false, "mismatch at q=" + std::to_string(q) + " d=" + std::to_string(d)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " (q, d) profiles agree"};
}

Outcome multiplicativity() {
  std::mt19937_64 gen(kDefaultSeed);
  std::uint64_t pairs = 0, solution_checks = 0;
  while (pairs < 10000) {
    const std::uint64_t m = gen() % 2000 + 1, n = gen() % 2000 + 1;
    if (std::gcd(m, n) != 1) continue;
    ++pairs;
    const unsigned d = 2 + static_cast<unsigned>(gen() % 5);
    const auto pm = power_residue_profile(m, d), pn = power_residue_profile(n, d);
    const auto pmn = power_residue_profile(m * n, d);
    if (pmn.u != pm.u * pn.u || pmn.e != pm.e * pn.e || pmn.r != pm.r * pn.r) {
      return {false, "profile not multiplicative at " + std::to_string(m) + "*" + std::to_string(n)};
    }
    const std::int64_t a_d = static_cast<std::int64_t>(gen() % 13) - 6;
    if (a_d == 0) continue;
    for (int k = 0; k < 4; ++k) {
      // Half of the right-hand sides are made solvable, the rest are random.
      Integer b = to_integer(gen() % (m * n));
      if (k % 2 == 0) b = to_integer(a_d) * ipow(to_integer(gen() % (m * n)), d);
      const auto whole = count_solutions(b, m * n, d, a_d);
      const Integer bm = b % to_integer(m), bn = b % to_integer(n);
      if (whole != count_solutions(bm, m, d, a_d) * count_solutions(bn, n, d, a_d)) {
        return {false, "count_solutions not multiplicative at " + std::to_string(m) + "*" +
                           std::to_string(n)};
      }
      if (m * n <= 20000 && whole != count_solutions_enumerated(b, m * n, d, a_d)) {
        return {false, "count_solutions disagrees with enumeration at q=" + std::to_string(m * n)};
      }
      ++solution_checks;
    }
  }
  return {true, std::to_string(pairs) + " coprime pairs, " + std::to_string(solution_checks) +
                    " solution counts"};
}

Outcome scaling_identity() {
  std::uint64_t checked = 0;
  for (std::uint64_t q = 1; q <= 2000; ++q) {
    for (unsigned d = 2; d <= 4; ++d) {
      for (std::int64_t a = -12; a <= 12; ++a) {
        if (a == 0) continue;
        const std::uint64_t enumerated = scaled_power_residues(q, d, a).size();
        const std::uint64_t closed = power_residue_count(q / std::gcd(q, abs_u64(a)), d);
        if (enumerated != closed) {
          return {false, "q=" + std::to_string(q) + " d=" + std::to_string(d) + " a_d=" +
                             std::to_string(a) + ": " + std::to_string(enumerated) + " vs " +
                             std::to_string(closed)};
        }
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " (q, d, a_d) triples, d in 2..4"};
}

Outcome bound_chains() {
  std::uint64_t checked = 0;
  for (std::uint64_t q = 1; q <= 100000; ++q) {
    const Factorization f = factorize(q);
    const unsigned w = distinct_prime_count(f);
    const std::uint64_t tq = divisor_count(f);
    for (unsigned d = 2; d <= 6; ++d) {
      const auto prof = power_residue_profile(q, d);
      const Integer two_d_w = ipow(Integer(2 * d), w);
      if (prof.u < 1 || Integer(to_integer(prof.u)) > two_d_w) {
        return {false, "u_d bound fails at q=" + std::to_string(q)};
      }
      if (to_integer(prof.r) > ipow(Integer(2), w) * to_integer(tq) * to_integer(q)) {
        return {false, "r_d upper bound fails at q=" + std::to_string(q)};
      }
      for (std::int64_t a : {1, -1, 2, 3, -6, 12}) {
        // q / (|a_d| (4d)^omega) <= |a_d G_d(q)|
        const Integer lhs_den = to_integer(abs_u64(a)) * ipow(Integer(4 * d), w);
        if (to_integer(q) > to_integer(scaled_power_residue_count(q, d, a)) * lhs_den) {
          return {false, "lower bound fails at q=" + std::to_string(q) + " d=" + std::to_string(d) +
                             " a_d=" + std::to_string(a)};
        }
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " (q, d, a_d) cases up to q=10^5"};
}

Outcome hensel_lifts() {
  std::mt19937_64 gen(kDefaultSeed);
  int lifted = 0;
  std::uint64_t uniqueness_checked = 0;
  while (lifted < 500) {
    const unsigned d = 2 + static_cast<unsigned>(gen() % 3);
    const std::uint64_t q = gen() % 499 + 2;
    const std::int64_t a_d = static_cast<std::int64_t>(gen() % 11) - 5;
    if (a_d == 0) continue;
    std::vector<Integer> coeffs(d + 1);
    for (auto& c : coeffs) c = static_cast<long>(gen() % 21) - 10;
    coeffs[d] = -to_integer(a_d);
    const IntPolynomial poly(coeffs);
    const std::uint64_t pt = gen() % q;
    if (std::gcd(q, pt * d * abs_u64(a_d)) != 1) continue;
    const Integer qq = to_integer(q);
    const Integer b = to_integer(a_d) * ipow(to_integer(pt), d) + qq * static_cast<long>(gen() % 50);
    const Integer p = hensel_lift(to_integer(pt), b, q, poly);
    const Integer modulus = ipow(qq, d - 1);
    const Integer residual = poly.eval_scaled(p, qq) + b;
    if (p < 0 || p >= modulus || !mpz_divisible_p(residual.get_mpz_t(), modulus.get_mpz_t()) ||
        Integer(p % qq) != to_integer(pt)) {
      return {false, "lift fails the congruence at q=" + std::to_string(q)};
    }
    const Integer back = to_integer(a_d) * ipow(p, d) - b;
    if (!mpz_divisible_p(back.get_mpz_t(), qq.get_mpz_t())) {
      return {false, "reduction mod q lost the root at q=" + std::to_string(q)};
    }
    const Factorization f = factorize(q);
    for (const auto& pp : f.factors()) {
      const Integer pik = ipow(to_integer(pp.prime), pp.exponent);
      const Integer target = ipow(to_integer(pp.prime), pp.exponent * (d - 1));
      if (target > 1'000'000) continue;
      int roots = 0;
      for (Integer x = Integer(to_integer(pt) % pik); x < target; x += pik) {
        const Integer r = poly.eval_scaled(x, qq) + b;
        if (mpz_divisible_p(r.get_mpz_t(), target.get_mpz_t())) ++roots;
      }
      if (roots != 1) return {false, "non-unique lift at q=" + std::to_string(q)};
      ++uniqueness_checked;
    }
    ++lifted;
  }
  return {true, "500 lifts exact, " + std::to_string(uniqueness_checked) +
                    " prime powers checked unique by enumeration"};
}

Outcome reduction_round_trip() {
  std::mt19937_64 gen(kDefaultSeed);
  int checked_points = 0;
  for (int i = 0; i < 200; ++i) {
    const auto in = testing::random_simultaneous_instance(gen);
    const auto hit = reduce_simultaneous(in.poly, in.alpha, in.x, in.p, in.q, in.r, in.tau, in.bound);
    const Integer qq = to_integer(in.q);
    if (!PowerRadius{in.bound.k_m, qq, Rational(-in.tau)}.strictly_exceeds(hit.error)) {
      return {false, "instance " + std::to_string(i) + " exceeds K_M q^-tau"};
    }
    const auto lift = lift_constrained(in.poly, in.alpha, hit.b, in.q, in.p, in.tau, in.bound);
    if (lift.r != in.r) return {false, "instance " + std::to_string(i) + " lifts to a different r"};
    const Rational m(to_integer(in.bound.interval_index));
    for (int k = 0; k < 20; ++k) {
      const Rational x2 = make_rational(in.p, qq) + testing::small_offset(gen, in.q, in.tau);
      if (x2 < m || x2 > m + 1) continue;
      const Rational dev = abs(in.poly.evaluate(x2) + in.alpha.value() - make_rational(lift.r, qq));
      if (!lift.radius.strictly_exceeds(dev)) {
        return {false, "instance " + std::to_string(i) + " lift exceeds 2 K_M q^-tau"};
      }
      ++checked_points;
    }
  }
  return {true, "200 instances, " + std::to_string(checked_points) + " lifted points within 2K_M/q^tau"};
}

// ------------------------------------------------------------------ 7..10

Outcome threshold_dichotomy() {
  ExperimentConfig config;
  config.taus = {Rational(5, 2), Rational(7, 2)};
  config.schedule = geometric_schedule(1, 4, 1u << 16);
  const auto report = threshold_experiment(config);
  const auto& divergent = report.rows[0];
  const auto& convergent = report.rows[1];
  const double slope_error = std::abs(divergent.fit.slope - 0.5);
  const bool pass = convergent.verdict == Verdict::kConverging &&
                    divergent.verdict == Verdict::kDiverging && slope_error <= 0.15;
  return {pass, "tau=7/2 " + std::string(to_string(convergent.verdict)) + ", tau=5/2 " +
                    std::string(to_string(divergent.verdict)) + " slope " +
                    fixed(divergent.fit.slope) + " (|slope-0.5| <= 0.15)"};
}

ExperimentConfig growth_config(const Rational& eps) {
  ExperimentConfig config;
  config.tau = Rational(5, 2);
  config.band = GcdBand::range(eps, Rational(1, 4));
  config.alpha_count = 20;
  config.schedule = geometric_schedule(1, 2, 1u << 20);
  return config;
}

Outcome growth_exponent() {
  const auto report = growth_exponent_experiment(growth_config(Rational(0)));
  // d + 1 - tau = 1/2, delta = 1/4: [0.5 - 0.25 - 0.15, 0.5 + 0.15]
  const double lo = 0.10, hi = 0.65;
  const bool pass = report.median_slope >= lo && report.median_slope <= hi;
  return {pass, "median slope " + fixed(report.median_slope) + " in [" + fixed(lo, 2) + ", " +
                    fixed(hi, 2) + "]"};
}

Outcome critical_band() {
  const auto report = critical_band_experiment(growth_config(Rational(1, 2)));
  const auto count = std::count(report.subpolynomial.begin(), report.subpolynomial.end(), true);
  const bool pass = report.fraction_subpolynomial >= 0.9;
  return {pass, std::to_string(count) + "/" + std::to_string(report.subpolynomial.size()) +
                    " alpha with slope <= 0.1 (need >= 90%), median slope " +
                    fixed(report.growth.median_slope)};
}

Outcome emptiness() {
  ExperimentConfig config;
  config.tau = Rational(13, 4);
  config.alpha_count = 20;
  config.quiet_lo = 256;
  config.quiet_hi = 65536;
  const auto report = emptiness_experiment(config);
  std::size_t empty = 0;
  for (const auto& row : report.rows) empty += row.hits_in_window == 0;
  const bool pass = report.fraction_empty >= 0.9;
  return {pass, std::to_string(empty) + "/" + std::to_string(report.rows.size()) +
                    " alpha without hits for q in [256, 65536] (need >= 90%)"};
}

// ------------------------------------------------------------------ 11, 12

Outcome discrepancy_regression() {
  const auto banded = banded_center_count(12, GcdBand::range(Rational(1, 4), Rational(1, 4)), 2, 1);
  // The displayed count for b = 0 is pi^nu - pi^ceil(nu/d) with q = pi^nu.
  const unsigned nu = 3, d = 2;
  const unsigned k_d = (nu + d - 1) / d;
  const std::uint64_t displayed = (1u << nu) - (1u << k_d);
  const std::uint64_t oracle = count_solutions_enumerated(Integer(0), 8, 2, 1);
  const std::uint64_t closed = count_solutions(Integer(0), 8, 2, 1);
  const bool pass = banded.oracle == std::optional<std::uint64_t>(1) && banded.formula == 6 &&
                    oracle == 2 && closed == 2 && displayed == 4;
  return {pass, "banded q=12 band {2,3}: oracle " +
                    (banded.oracle ? std::to_string(*banded.oracle) : std::string("n/a")) +
                    " vs formula " + std::to_string(banded.formula) +
                    "; b=0 q=8 d=2: oracle " + std::to_string(oracle) + " (closed form " +
                    std::to_string(closed) + ") vs displayed " + std::to_string(displayed)};
}

std::string cli_output(std::vector<std::string> args, const char* threads) {
  args.insert(args.end(), {"--threads", threads});
  std::ostringstream out, err;
  if (cli_dispatch(args, out, err) != 0) return "exit failure: " + err.str();
  return out.str();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> runs{
      {"experiment", "threshold", "--qmax", "4096"},
      {"experiment", "growth", "--qmax", "65536", "--alpha-count", "8", "--band", "0,1/4"},
      {"experiment", "growth", "--qmax", "65536", "--alpha-count", "8", "--curves"},
      {"experiment", "critical", "--qmax", "65536", "--alpha-count", "8"},
      {"experiment", "emptiness", "--tau", "13/4", "--alpha-count", "8", "--window", "64,8192"},
      {"experiment", "svolume", "--tau", "11/4", "--alpha-count", "4", "--qmax", "4096", "--curves"},
      {"scan", "--tau", "5/2", "--alpha", "dyadic:1729:128:0", "--qmax", "20000"},
      {"cover", "--tau", "7/2", "--qmin", "1", "--qmax", "5000", "--tail", "--band", "0,1/2"},
  };
  std::size_t identical = 0;
  for (const auto& args : runs) {
    const std::string one = cli_output(args, "1");
    const std::string four = cli_output(args, "4");
    if (one.rfind("exit failure", 0) == 0) return {false, args[0] + " " + args[1] + ": " + one};
    if (one != four) return {false, args[0] + " " + args[1] + " differs between 1 and 4 threads"};
    ++identical;
  }
  return {true, std::to_string(identical) + " reports byte-identical at 1 and 4 threads"};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "closed_form_vs_oracle", 120, closed_form_vs_oracle},
      {2, "multiplicativity", 60, multiplicativity},
      {3, "scaling_identity", 120, scaling_identity},
      {4, "bound_chains", 120, bound_chains},
      {5, "hensel_lift", 60, hensel_lifts},
      {6, "reduction_round_trip", 60, reduction_round_trip},
      {7, "threshold_dichotomy", 300, threshold_dichotomy},
      {8, "growth_exponent", 900, growth_exponent},
      {9, "critical_band", 900, critical_band},
      {10, "emptiness_above_d_plus_1", 600, emptiness},
      {11, "discrepancy_regression", 1, discrepancy_regression},
      {12, "determinism", 120, determinism},
  };
  return all;
}

bool run_one(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = c.run();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = outcome.pass;
  std::string detail = outcome.detail;
  if (seconds > c.budget_seconds) {
    pass = false;
    detail += "; over the " + fixed(c.budget_seconds, 0) + "s budget";
  }
  std::printf("criterion %02d %s %s: %s (%.1fs)\n", c.number, pass ? "PASS" : "FAIL", c.name,
              detail.c_str(), seconds);
  std::fflush(stdout);
  return pass;
}

}  // namespace
}  // namespace dapprox

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks; one PASS/FAIL line per criterion"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion numbers to run (default: all)")
      ->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : dapprox::criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.number) == selected.end()) {
      continue;
    }
    all_pass = dapprox::run_one(c) && all_pass;
  }
  return all_pass ? 0 : 1;
}
