#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dapprox/alpha.hpp"
#include "dapprox/counting.hpp"
#include "dapprox/covers.hpp"
#include "dapprox/curve.hpp"
#include "dapprox/errors.hpp"
#include "dapprox/experiments.hpp"
#include "dapprox/polynomial.hpp"
#include "dapprox/report.hpp"
#include "dapprox/residues.hpp"

namespace dapprox {
namespace {

struct Common {
  std::string format = "csv";
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::string gnuplot_dir;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format: csv or jsonl")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for sampled alphas")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
      ->capture_default_str();
  cmd->add_option("--dump-gnuplot", c.gnuplot_dir,
                  "Directory receiving one two-column data file per curve");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw PreconditionError("empty list '" + text + "'");
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text, ',')) {
    const Rational r = parse_rational(item);
    if (r.get_den() != 1 || sgn(r) <= 0) throw PreconditionError("bad schedule entry '" + item + "'");
    out.push_back(to_u64(r.get_num()));
  }
  return out;
}

// Polynomial from --poly, or -a_d X^d from --d/--ad when --poly is absent.
IntPolynomial resolve_poly(const std::string& poly, unsigned d, std::int64_t a_d) {
  if (!poly.empty()) return IntPolynomial::parse(poly);
  return IntPolynomial::monomial(d, a_d);
}

// "1/3", "0.25", "pi" (any named constant), or "dyadic:SEED:BITS:INDEX".
AlphaValue parse_alpha(const std::string& text, unsigned bits) {
  static const std::vector<std::string> names{"pi", "e", "sqrt2", "sqrt3", "golden", "ln2"};
  if (std::find(names.begin(), names.end(), text) != names.end()) {
    return AlphaValue::named_constant(text, bits);
  }
  if (text.rfind("dyadic:", 0) == 0) {
    const auto parts = split(text.substr(7), ':');
    if (parts.size() != 3) throw PreconditionError("dyadic alpha must be dyadic:SEED:BITS:INDEX");
    return AlphaValue::dyadic_random(std::stoull(parts[0]), static_cast<unsigned>(std::stoul(parts[1])),
                                     std::stoull(parts[2]));
  }
  const Rational value = parse_rational(text);
  if (sgn(value) < 0 || value > 1) throw PreconditionError("alpha must lie in [0, 1]");
  return AlphaValue::user_supplied(value);
}

void dump_gnuplot(const Common& c, const std::string& name, std::string_view title,
                  const std::vector<std::pair<double, double>>& points) {
  if (c.gnuplot_dir.empty()) return;
  std::filesystem::create_directories(c.gnuplot_dir);
  std::ofstream file(std::filesystem::path(c.gnuplot_dir) / (name + ".dat"));
  if (!file) throw PreconditionError("cannot write gnuplot file in '" + c.gnuplot_dir + "'");
  write_gnuplot(file, title, points);
}

// ------------------------------------------------------------------ commands

struct ResiduesArgs {
  std::uint64_t q = 0, qmin = 0, qmax = 0;
  unsigned d = 2;
  std::int64_t a_d = 1;
  std::string set;
  bool enumerate = false;
};

void run_residues(const ResiduesArgs& a, const Common& c, std::ostream& out) {
  const OutputFormat format = parse_output_format(c.format);
  if (!a.set.empty()) {
    if (a.q == 0) throw PreconditionError("--set needs --q");
    ResidueSet set;
    if (a.set == "powers") set = power_residues(a.q, a.d);
    else if (a.set == "units") set = unit_power_residues(a.q, a.d);
    else if (a.set == "scaled") set = scaled_power_residues(a.q, a.d, a.a_d);
    else throw PreconditionError("--set must be powers, units or scaled");
    write_table(out, residue_set_table(set), format);
    return;
  }
  std::uint64_t lo = a.q, hi = a.q;
  if (a.q == 0) {
    if (a.qmax == 0) throw PreconditionError("residues needs --q or --qmax");
    lo = std::max<std::uint64_t>(a.qmin, 1);
    hi = a.qmax;
  }
  std::vector<PowerResidueProfile> profiles;
  for (std::uint64_t q = lo; q <= hi; ++q) {
    profiles.push_back(a.enumerate ? power_residue_profile_enumerated(q, a.d)
                                   : power_residue_profile(q, a.d));
  }
  write_table(out, profile_table(profiles), format);
}

struct CongruenceArgs {
  std::uint64_t q = 0;
  unsigned d = 2;
  std::int64_t a_d = 1;
  std::string poly, b = "0", p_tilde;
};

void run_congruence(const CongruenceArgs& a, const Common& c, std::ostream& out) {
  const OutputFormat format = parse_output_format(c.format);
  if (a.q == 0) throw PreconditionError("congruence needs --q");
  const IntPolynomial poly = resolve_poly(a.poly, a.d, a.a_d);
  const unsigned d = poly.degree();
  const std::int64_t a_d = poly.a_d();
  const Rational b_r = parse_rational(a.b);
  if (b_r.get_den() != 1) throw PreconditionError("--b must be an integer");
  const Integer b = b_r.get_num();
  if (a.p_tilde.empty()) {
    Table t{{"q", "b", "d", "a_d", "solvable", "unit_class", "count"}, {}};
    t.add_row({std::to_string(a.q), b.get_str(), std::to_string(d), std::to_string(a_d),
               is_power_residue(b, a.q, d, a_d) ? "1" : "0",
               is_unit_power_residue(b, a.q, d, a_d) ? "1" : "0",
               std::to_string(count_solutions(b, a.q, d, a_d))});
    write_table(out, t, format);
    return;
  }
  const Rational pt = parse_rational(a.p_tilde);
  if (pt.get_den() != 1) throw PreconditionError("--ptilde must be an integer");
  const Integer p = hensel_lift(pt.get_num(), b, a.q, poly);
  const Integer modulus = ipow(to_integer(a.q), d - 1);
  Table t{{"q", "b", "p_tilde", "p", "modulus"}, {}};
  t.add_row({std::to_string(a.q), b.get_str(), pt.get_num().get_str(), p.get_str(), modulus.get_str()});
  write_table(out, t, format);
}

struct ReduceArgs {
  std::string poly = "0,0,-1", alpha, x, p, r, tau;
  std::uint64_t q = 0;
  std::optional<std::int64_t> interval;
};

void run_reduce(const ReduceArgs& a, const Common& c, std::ostream& out) {
  const OutputFormat format = parse_output_format(c.format);
  const IntPolynomial poly = IntPolynomial::parse(a.poly);
  if (a.alpha.empty() || a.x.empty() || a.p.empty() || a.r.empty() || a.tau.empty() || a.q == 0) {
    throw PreconditionError("reduce needs --alpha --x --p --q --r --tau");
  }
  const AlphaValue alpha = AlphaValue::user_supplied(parse_rational(a.alpha));
  const Rational x = parse_rational(a.x);
  const Rational tau = parse_rational(a.tau);
  const Rational p = parse_rational(a.p), r = parse_rational(a.r);
  if (p.get_den() != 1 || r.get_den() != 1) throw PreconditionError("--p and --r must be integers");
  std::int64_t m = 0;
  if (a.interval) {
    m = *a.interval;
  } else {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    m = fl.get_si();
  }
  const DerivativeBound bound = derivative_sup_bound(poly, m);
  const ConstrainedHit hit = reduce_simultaneous(poly, alpha, x, p.get_num(), a.q, r.get_num(), tau, bound);
  const LiftedApproximation lift = lift_constrained(poly, alpha, hit.b, a.q, p.get_num(), tau, bound);
  Table t{{"q", "b", "error_num", "error_den", "gcd_bq", "k_m", "r_lift", "lift_radius"}, {}};
  t.add_row({std::to_string(a.q), hit.b.get_str(), hit.error.get_num().get_str(),
             hit.error.get_den().get_str(), hit.gcd_bq.get_str(), to_string(bound.k_m),
             lift.r.get_str(),
             to_string(lift.radius.coefficient) + "*" + lift.radius.base.get_str() + "^(" +
                 to_string(lift.radius.exponent) + ")"});
  write_table(out, t, format);
}

struct CoverArgs {
  std::string tau, band = "full", poly, series;
  unsigned d = 2;
  std::int64_t a_d = 1;
  std::uint64_t q = 0, qmin = 1, qmax = 0, big_q = 0;
  bool tail = false;
  std::uint64_t oracle_threshold = 10'000;
  unsigned bits = 64;
};

void run_cover(const CoverArgs& a, const Common& c, std::ostream& out) {
  const OutputFormat format = parse_output_format(c.format);
  CoverOptions options{a.oracle_threshold, a.bits, false};
  if (!a.series.empty()) {
    const auto parts = parse_rational_list(a.series);
    if (parts.size() != 3 || parts[2].get_den() != 1) {
      throw PreconditionError("--series must be z,s,n");
    }
    const std::uint64_t top = a.big_q ? a.big_q : (a.qmax ? a.qmax : 1000);
    const auto schedule = geometric_schedule(1, 2, top);
    const auto sums = restricted_series_schedule(parts[0], parts[1], to_u64(parts[2].get_num()),
                                                 schedule, a.bits, c.threads);
    Table t{{"z", "s", "n", "Q", "sum_lo", "sum_hi"}, {}};
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      t.add_row({to_string(parts[0]), to_string(parts[1]), parts[2].get_str(),
                 std::to_string(schedule[i]), to_string(sums[i].lo), to_string(sums[i].hi)});
      pts.emplace_back(static_cast<double>(schedule[i]), to_double(sums[i].midpoint()));
    }
    write_table(out, t, format);
    dump_gnuplot(c, "series", "Q L_z-partial-sum", pts);
    return;
  }
  if (a.tau.empty()) throw PreconditionError("cover needs --tau");
  const Rational tau = parse_rational(a.tau);
  const IntPolynomial poly = resolve_poly(a.poly, a.d, a.a_d);
  const unsigned d = poly.degree();
  const std::int64_t a_d = poly.a_d();
  const GcdBand band = GcdBand::parse(a.band);
  std::uint64_t lo = a.q, hi = a.q;
  if (a.q == 0) {
    if (a.qmax == 0) throw PreconditionError("cover needs --q or --qmax");
    lo = a.qmin;
    hi = a.qmax;
  }
  if (a.tail) {
    options.round_terms = hi - lo > 1000;
    const Interval sum = tail_sum(tau, d, a_d, lo, hi, band, options);
    Table t{{"N", "Q", "sum_lo", "sum_hi"}, {}};
    t.add_row({std::to_string(lo), std::to_string(hi), to_string(sum.lo), to_string(sum.hi)});
    write_table(out, t, format);
    return;
  }
  std::vector<CoverRecord> records;
  std::vector<std::pair<double, double>> pts;
  for (std::uint64_t q = lo; q <= hi; ++q) {
    records.push_back(cover_measure(q, tau, d, a_d, band, options));
    pts.emplace_back(static_cast<double>(q), to_double(records.back().measure.midpoint()));
  }
  write_table(out, cover_table(records), format);
  dump_gnuplot(c, "cover", "q measure", pts);
}

struct ScanArgs {
  std::string poly = "0,0,-1", tau, alpha, band = "full", reading = "power", count;
  std::uint64_t qmin = 1, qmax = 0;
  bool primitive = false, coprime = false, roots = false;
  std::optional<unsigned> omega_max;
  unsigned alpha_bits = 0;
};

void run_scan(const ScanArgs& a, const Common& c, std::ostream& out) {
  const OutputFormat format = parse_output_format(c.format);
  if (a.tau.empty() || a.alpha.empty()) throw PreconditionError("scan needs --tau and --alpha");
  const IntPolynomial poly = IntPolynomial::parse(a.poly);
  ScanParams params;
  params.degree = poly.degree();
  params.a_d = poly.a_d();
  params.tau = parse_rational(a.tau);
  params.band = GcdBand::parse(a.band);
  params.flags.primitive_only = a.primitive;
  params.flags.coprime_to_d_ad = a.coprime;
  params.flags.omega_max = a.omega_max;
  params.threads = c.threads;
  CountReading reading = CountReading::kPowerAtMost;
  if (a.reading == "denominator") reading = CountReading::kDenominatorAtMost;
  else if (a.reading != "power") throw PreconditionError("--reading must be power or denominator");

  if (!a.count.empty()) {
    const auto schedule = parse_u64_list(a.count);
    const std::uint64_t qmax = denominator_limit(schedule.back(), params.degree, reading);
    const unsigned bits = a.alpha_bits ? a.alpha_bits
                                       : std::max(128u, required_alpha_bits(params.degree, params.tau,
                                                                            std::max<std::uint64_t>(qmax, 2)));
    const AlphaValue alpha = parse_alpha(a.alpha, bits);
    const CountCurve curve = count_curve(alpha, params, schedule, reading);
    write_table(out, curve_table(curve), format);
    std::vector<std::pair<double, double>> pts;
    for (const auto& [q, n] : curve.samples) pts.emplace_back(static_cast<double>(q), static_cast<double>(n));
    dump_gnuplot(c, "count_curve", "Q N", pts);
    return;
  }
  if (a.qmax == 0) throw PreconditionError("scan needs --qmax (or --count)");
  params.qmin = a.qmin;
  params.qmax = a.qmax;
  const unsigned bits = a.alpha_bits ? a.alpha_bits
                                     : std::max(128u, required_alpha_bits(params.degree, params.tau,
                                                                          std::max<std::uint64_t>(a.qmax, 2)));
  const AlphaValue alpha = parse_alpha(a.alpha, bits);
  auto hits = find_hits(alpha, params);
  if (a.roots) attach_roots(hits, poly);
  Table t = hit_table(hits, params.flags.describe(params.band));
  if (a.roots) {
    t.columns.push_back("p");
    for (std::size_t i = 0; i < hits.size(); ++i) {
      t.rows[i].push_back(hits[i].p ? hits[i].p->get_str() : std::string());
    }
  }
  write_table(out, t, format);
}

struct ExperimentArgs {
  std::string kind, poly = "0,0,-1", tau, taus, band = "full", schedule, s_grid, window, reading = "power";
  std::size_t alpha_count = 20;
  unsigned alpha_bits = 0;
  std::uint64_t qmax = 0, ratio = 0;
  bool curves = false;
};

void run_experiment(const ExperimentArgs& a, const Common& c, std::ostream& out) {
  const OutputFormat format = parse_output_format(c.format);
  ExperimentConfig config;
  config.poly = IntPolynomial::parse(a.poly);
  if (!a.tau.empty()) config.tau = parse_rational(a.tau);
  config.band = GcdBand::parse(a.band);
  config.alpha_count = a.alpha_count;
  config.alpha_bits = a.alpha_bits;
  config.seed = c.seed;
  config.threads = c.threads;
  if (a.reading == "denominator") config.reading = CountReading::kDenominatorAtMost;
  else if (a.reading != "power") throw PreconditionError("--reading must be power or denominator");
  if (!a.schedule.empty()) {
    config.schedule = parse_u64_list(a.schedule);
  } else if (a.qmax || a.ratio) {
    const std::uint64_t ratio = a.ratio ? a.ratio : (a.kind == "threshold" ? 4 : 2);
    const std::uint64_t top = a.qmax ? a.qmax : (a.kind == "growth" || a.kind == "critical" ? 1u << 20 : 1u << 16);
    config.schedule = geometric_schedule(1, ratio, top);
  }
  if (!a.window.empty()) {
    const auto w = parse_u64_list(a.window);
    if (w.size() != 2) throw PreconditionError("--window must be lo,hi");
    config.quiet_lo = w[0];
    config.quiet_hi = w[1];
  }

  if (a.kind == "threshold") {
    config.taus = a.taus.empty() ? std::vector<Rational>{Rational(5, 2), Rational(3), Rational(7, 2)}
                                 : parse_rational_list(a.taus);
    const auto report = threshold_experiment(config);
    write_table(out, report.table(), format, report.echo);
    for (const auto& row : report.rows) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < row.schedule.size(); ++i) {
        pts.emplace_back(static_cast<double>(row.schedule[i]), to_double(row.sums[i].midpoint()));
      }
      std::string tag = row.tau.get_str();
      std::replace(tag.begin(), tag.end(), '/', '_');
      dump_gnuplot(c, "threshold_tau" + tag, "Q tail-sum", pts);
    }
  } else if (a.kind == "growth" || a.kind == "critical") {
    if (a.kind == "critical" && a.band == "full") {
      const Rational eps = Rational(config.poly.degree()) + 1 - config.tau;
      config.band = GcdBand::range(eps, std::min(Rational(1, 4), Rational(1 - eps)));
    }
    GrowthReport growth;
    if (a.kind == "growth") {
      growth = growth_exponent_experiment(config);
      write_table(out, a.curves ? growth.curve_table() : growth.fit_table(), format, growth.echo);
    } else {
      const auto report = critical_band_experiment(config);
      growth = report.growth;
      write_table(out, a.curves ? growth.curve_table() : report.table(), format, growth.echo);
    }
    for (std::size_t i = 0; i < growth.curves.size(); ++i) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& [q, n] : growth.curves[i].samples) {
        pts.emplace_back(static_cast<double>(q), static_cast<double>(n));
      }
      dump_gnuplot(c, a.kind + "_alpha" + std::to_string(i), "Q N", pts);
    }
  } else if (a.kind == "emptiness") {
    const auto report = emptiness_experiment(config);
    write_table(out, report.table(), format, report.echo);
  } else if (a.kind == "svolume") {
    config.s_grid = a.s_grid.empty()
                        ? std::vector<Rational>{Rational(1, 20), Rational(1, 10), Rational(3, 20),
                                                Rational(1, 5), Rational(1, 2), Rational(1)}
                        : parse_rational_list(a.s_grid);
    const auto report = svolume_sweep(config);
    write_table(out, a.curves ? report.table() : report.summary_table(), format, report.echo);
  } else {
    throw PreconditionError("experiment must be threshold, growth, critical, emptiness or svolume");
  }
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained Diophantine approximation toolkit", "dapprox"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Common common;

  ResiduesArgs res;
  auto* residues = app.add_subcommand("residues", "u_d, e_d, r_d profiles and residue sets");
  add_common(residues, common);
  residues->add_option("--q", res.q, "Modulus");
  residues->add_option("--qmin", res.qmin, "First modulus of a range");
  residues->add_option("--qmax", res.qmax, "Last modulus of a range");
  residues->add_option("--d", res.d, "Degree d >= 2")->capture_default_str();
  residues->add_option("--ad", res.a_d, "a_d for --set scaled")->capture_default_str();
  residues->add_option("--set", res.set, "List a set instead: powers, units or scaled");
  residues->add_flag("--enumerate", res.enumerate, "Use brute-force enumeration");

  CongruenceArgs con;
  auto* congruence = app.add_subcommand("congruence", "Solution counts and Hensel lifts");
  add_common(congruence, common);
  congruence->add_option("--q", con.q, "Modulus")->required();
  congruence->add_option("--d", con.d, "Degree when --poly is absent")->capture_default_str();
  congruence->add_option("--ad", con.a_d, "a_d when --poly is absent")->capture_default_str();
  congruence->add_option("--poly", con.poly, "Coefficients, constant first");
  congruence->add_option("--b", con.b, "Right-hand side b")->capture_default_str();
  congruence->add_option("--ptilde", con.p_tilde, "Lift this root of a_d p^d = b (mod q)");

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "Simultaneous-to-constrained reduction and its converse");
  add_common(reduce, common);
  reduce->add_option("--poly", red.poly, "Coefficients, constant first")->capture_default_str();
  reduce->add_option("--alpha", red.alpha, "Rational alpha");
  reduce->add_option("--x", red.x, "Rational x");
  reduce->add_option("--p", red.p, "Numerator p");
  reduce->add_option("--q", red.q, "Denominator q");
  reduce->add_option("--r", red.r, "Numerator r");
  reduce->add_option("--tau", red.tau, "Exponent tau as u/v");
  reduce->add_option("--M", red.interval, "Interval index M (default floor(x))");

  CoverArgs cov;
  auto* cover = app.add_subcommand("cover", "Cover measures, tail sums and restricted series");
  add_common(cover, common);
  cover->add_option("--tau", cov.tau, "Exponent tau as u/v");
  cover->add_option("--d", cov.d, "Degree when --poly is absent")->capture_default_str();
  cover->add_option("--ad", cov.a_d, "a_d when --poly is absent")->capture_default_str();
  cover->add_option("--poly", cov.poly, "Coefficients, constant first");
  cover->add_option("--q", cov.q, "Single modulus");
  cover->add_option("--qmin", cov.qmin, "First modulus of a range")->capture_default_str();
  cover->add_option("--qmax", cov.qmax, "Last modulus of a range");
  cover->add_option("--band", cov.band, "full or eps,delta")->capture_default_str();
  cover->add_flag("--tail", cov.tail, "Print the tail sum over [qmin, qmax]");
  cover->add_option("--series", cov.series, "Partial sums of L_z(s): z,s,n");
  cover->add_option("--Q", cov.big_q, "Top of the series schedule");
  cover->add_option("--oracle-threshold", cov.oracle_threshold, "Enumerate banded counts up to this q")
      ->capture_default_str();
  cover->add_option("--bits", cov.bits, "Precision of q^tau enclosures")->capture_default_str();

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "Constrained hits and the counting function");
  add_common(scan, common);
  scan->add_option("--poly", sc.poly, "Coefficients, constant first")->capture_default_str();
  scan->add_option("--tau", sc.tau, "Exponent tau as u/v");
  scan->add_option("--alpha", sc.alpha, "Rational, named constant or dyadic:SEED:BITS:INDEX");
  scan->add_option("--alpha-bits", sc.alpha_bits, "Bits for named or derived alphas");
  scan->add_option("--qmin", sc.qmin, "First q")->capture_default_str();
  scan->add_option("--qmax", sc.qmax, "Last q");
  scan->add_option("--band", sc.band, "full or eps,delta")->capture_default_str();
  scan->add_flag("--primitive", sc.primitive, "Require b in a_d G_d^x(q)");
  scan->add_flag("--coprime", sc.coprime, "Require gcd(q, d a_d) = 1");
  scan->add_option("--omega-max", sc.omega_max, "Require omega(q) <= this");
  scan->add_flag("--roots", sc.roots, "Recover p for each hit");
  scan->add_option("--count", sc.count, "Comma-separated Q values: print N(Q) instead of hits");
  scan->add_option("--reading", sc.reading, "power (q^d <= Q) or denominator (q <= Q)")
      ->capture_default_str();

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Desk-scale experiment drivers");
  add_common(experiment, common);
  experiment->add_option("kind", ex.kind, "threshold, growth, critical, emptiness or svolume")->required();
  experiment->add_option("--poly", ex.poly, "Coefficients, constant first")->capture_default_str();
  experiment->add_option("--tau", ex.tau, "Exponent tau as u/v");
  experiment->add_option("--taus", ex.taus, "Comma-separated tau values (threshold)");
  experiment->add_option("--band", ex.band, "full or eps,delta")->capture_default_str();
  experiment->add_option("--alpha-count", ex.alpha_count, "Number of sampled alphas")->capture_default_str();
  experiment->add_option("--alpha-bits", ex.alpha_bits, "Bits per alpha (default: automatic)");
  experiment->add_option("--schedule", ex.schedule, "Comma-separated Q schedule");
  experiment->add_option("--qmax", ex.qmax, "Top of the default geometric schedule");
  experiment->add_option("--ratio", ex.ratio, "Ratio of the default geometric schedule");
  experiment->add_option("--s-grid", ex.s_grid, "Comma-separated s values (svolume)");
  experiment->add_option("--window", ex.window, "Emptiness window lo,hi");
  experiment->add_option("--reading", ex.reading, "power or denominator")->capture_default_str();
  experiment->add_flag("--curves", ex.curves, "Print the per-Q curves instead of the summary");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (residues->parsed()) run_residues(res, common, out);
    else if (congruence->parsed()) run_congruence(con, common, out);
    else if (reduce->parsed()) run_reduce(red, common, out);
    else if (cover->parsed()) run_cover(cov, common, out);
    else if (scan->parsed()) run_scan(sc, common, out);
    else if (experiment->parsed()) run_experiment(ex, common, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dapprox
