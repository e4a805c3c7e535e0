#include "dapprox/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "dapprox/errors.hpp"
#include "dapprox/residues.hpp"

namespace dapprox {
namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each fn writes only
// its own slot, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double quantile(std::vector<double> v, double p) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return i + 1 < v.size() ? v[i] * (1 - frac) + v[i + 1] * frac : v[i];
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << x;
  return out.str();
}

std::string schedule_text(const std::vector<std::uint64_t>& s) {
  if (s.empty()) return "default";
  std::ostringstream out;
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ";" : "") << s[i];
  return out.str();
}

std::string source_text(const GcdBand& band, const CoverOptions& options) {
  if (band.is_full()) return "closed_form";
  return "oracle(q<=" + std::to_string(options.oracle_threshold) + ")+formula";
}

std::vector<std::uint64_t> resolve(const std::vector<std::uint64_t>& given, std::uint64_t ratio,
                                   std::uint64_t last) {
  return given.empty() ? geometric_schedule(1, ratio, last) : given;
}

ScanParams scan_params(const ExperimentConfig& config) {
  ScanParams p;
  p.degree = config.poly.degree();
  p.a_d = config.poly.a_d();
  p.tau = config.tau;
  p.band = config.band;
  p.flags = config.flags;
  p.threads = 1;
  return p;
}

}  // namespace

std::vector<std::uint64_t> geometric_schedule(std::uint64_t start, std::uint64_t ratio,
                                              std::uint64_t last) {
  if (start == 0 || ratio < 2) throw PreconditionError("schedule needs start >= 1 and ratio >= 2");
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = start; q <= last; q *= ratio) {
    out.push_back(q);
    if (q > last / ratio) break;
  }
  return out;
}

Rational rational_approximation(double x, std::uint64_t max_den) {
  if (!std::isfinite(x)) throw PreconditionError("cannot approximate a non-finite value");
  // Continued-fraction convergents h/k with k <= max_den.
  const bool negative = x < 0;
  double rest = std::fabs(x);
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(rest);
    const Integer a = Integer(a_d);
    const Integer h2 = a * h1 + h0;
    const Integer k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = rest - a_d;
    if (frac < 1e-12) break;
    rest = 1.0 / frac;
  }
  if (k1 == 0) return 0;
  Rational r(negative ? Integer(-h1) : h1, k1);
  r.canonicalize();
  return r;
}

ExponentFit fit_exponent(const std::vector<std::pair<std::uint64_t, double>>& samples) {
  const std::size_t n = samples.size();
  const std::size_t take = (n + 1) / 2;
  if (take < 2) throw PreconditionError("exponent fit needs at least two points in its window");
  ExponentFit fit;
  const std::size_t start = n - take;
  fit.window_lo = samples[start].first;
  fit.window_hi = samples.back().first;
  double sx = 0, sy = 0;
  for (std::size_t i = start; i < n; ++i) {
    const double x = std::log(static_cast<double>(samples[i].first));
    const double y = std::log(std::max(samples[i].second, 1.0));
    fit.points.emplace_back(x, y);
    sx += x;
    sy += y;
  }
  const double m = static_cast<double>(take);
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  fit.slope = sxx > 0 ? sxy / sxx : 0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& [x, y] : fit.points) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  fit.slope_rational = rational_approximation(fit.slope);
  return fit;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kConverging:
      return "converging";
    case Verdict::kDiverging:
      return "diverging";
    case Verdict::kDivergingLogarithmic:
      return "diverging (logarithmic)";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_partial_sums(const std::vector<double>& sums, const VerdictRules& rules) {
  std::vector<double> inc;
  for (std::size_t i = 1; i < sums.size(); ++i) inc.push_back(sums[i] - sums[i - 1]);
  if (inc.size() < 4) return Verdict::kInconclusive;
  const std::size_t n = inc.size();
  auto shrinks = [&](double prev, double next) {
    if (prev == 0 && next == 0) return true;
    return prev >= rules.flatten_factor * next;
  };
  bool flattening = true;
  for (std::size_t i = n - 3; i < n; ++i) flattening = flattening && shrinks(inc[i - 1], inc[i]);
  if (flattening) return Verdict::kConverging;

  bool logarithmic = true;
  for (std::size_t i = n - 3; i < n; ++i) {
    if (inc[i - 1] <= 0 || inc[i] <= 0) {
      logarithmic = false;
      break;
    }
    const double ratio = inc[i] / inc[i - 1];
    logarithmic = logarithmic && ratio <= rules.logarithmic_band &&
                  ratio >= 1.0 / rules.logarithmic_band;
  }
  if (logarithmic) return Verdict::kDivergingLogarithmic;

  bool non_shrinking = true;
  for (std::size_t i = n - 3; i < n; ++i) non_shrinking = non_shrinking && inc[i] >= inc[i - 1];
  const double total = sums.back() - sums.front();
  if (non_shrinking && inc.front() > 0 && total > rules.unbounded_multiple * inc.front()) {
    return Verdict::kDiverging;
  }
  return Verdict::kInconclusive;
}

ConfigEcho config_echo(const ExperimentConfig& config, const std::string& experiment) {
  ConfigEcho echo{
      {"experiment", experiment},
      {"version", std::string(version())},
      {"seed", std::to_string(config.seed)},
      {"poly", config.poly.to_string()},
      {"degree", std::to_string(config.poly.degree())},
      {"a_d", std::to_string(config.poly.a_d())},
      {"band", config.band.to_string()},
      {"flags", config.flags.describe(config.band)},
      {"reading", std::string(to_string(config.reading))},
      {"alpha_count", std::to_string(config.alpha_count)},
      {"alpha_bits", config.alpha_bits ? std::to_string(config.alpha_bits) : "auto"},
      {"schedule", schedule_text(config.schedule)},
  };
  if (config.taus.empty()) {
    echo.emplace_back("tau", to_string(config.tau));
  } else {
    std::string taus;
    for (std::size_t i = 0; i < config.taus.size(); ++i) {
      taus += (i ? ";" : "") + to_string(config.taus[i]);
    }
    echo.emplace_back("taus", taus);
  }
  return echo;
}

std::vector<AlphaValue> config_alphas(const ExperimentConfig& config, std::uint64_t qmax) {
  if (config.alpha_count == 0) throw PreconditionError("alpha count must be at least one");
  const unsigned bits = config.alpha_bits
                            ? config.alpha_bits
                            : std::max(128u, required_alpha_bits(config.poly.degree(), config.tau,
                                                                 std::max<std::uint64_t>(qmax, 2)));
  return sample_dyadic_alphas(config.seed, bits, config.alpha_count);
}

// ---------------------------------------------------------------- threshold

ThresholdReport threshold_experiment(const ExperimentConfig& config) {
  if (config.taus.empty()) throw PreconditionError("threshold experiment needs tau values");
  const unsigned d = config.poly.degree();
  const std::int64_t a_d = config.poly.a_d();
  const auto schedule = resolve(config.schedule, 4, std::uint64_t{1} << 16);
  ThresholdReport report;
  report.echo = config_echo(config, "threshold");
  report.echo.emplace_back("count_source", source_text(config.band, config.cover));
  report.echo.emplace_back("tail_start", std::to_string(config.tail_start));
  report.echo.emplace_back("resolved_schedule", schedule_text(schedule));
  for (const Rational& tau : config.taus) {
    ThresholdRow row;
    row.tau = tau;
    row.schedule = schedule;
    row.sums = tail_sum_schedule(tau, d, a_d, config.tail_start, schedule, config.band,
                                 config.cover, config.threads);
    std::vector<double> mids;
    std::vector<std::pair<std::uint64_t, double>> samples;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      mids.push_back(to_double(row.sums[i].midpoint()));
      samples.emplace_back(schedule[i], mids.back());
    }
    row.verdict = classify_partial_sums(mids, config.rules);
    row.fit = fit_exponent(samples);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Table ThresholdReport::table() const {
  Table t{{"tau", "Q", "sum_lo", "sum_hi", "increment", "verdict", "slope", "residual",
           "window_lo", "window_hi"},
          {}};
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.schedule.size(); ++i) {
      const double inc =
          i == 0 ? 0.0 : to_double(row.sums[i].midpoint()) - to_double(row.sums[i - 1].midpoint());
      t.add_row({to_string(row.tau), std::to_string(row.schedule[i]),
                 fmt(to_double(row.sums[i].lo)), fmt(to_double(row.sums[i].hi)), fmt(inc),
                 std::string(to_string(row.verdict)), fmt(row.fit.slope), fmt(row.fit.residual),
                 std::to_string(row.fit.window_lo), std::to_string(row.fit.window_hi)});
    }
  }
  return t;
}

// ------------------------------------------------------------------- growth

GrowthReport growth_exponent_experiment(const ExperimentConfig& config) {
  const auto schedule = resolve(config.schedule, 2, std::uint64_t{1} << 20);
  const unsigned d = config.poly.degree();
  const std::uint64_t qmax = denominator_limit(schedule.back(), d, config.reading);
  GrowthReport report;
  report.echo = config_echo(config, "growth");
  report.echo.emplace_back("count_source", "exact_scan");
  report.echo.emplace_back("resolved_schedule", schedule_text(schedule));
  report.alphas = config_alphas(config, qmax);
  report.echo.emplace_back("alpha_provenance", report.alphas.front().describe() + "..");
  const ScanParams params = scan_params(config);
  const std::size_t n = report.alphas.size();
  report.curves.resize(n);
  report.fits.resize(n);
  parallel_for(n, config.threads, [&](std::size_t i) {
    report.curves[i] = count_curve(report.alphas[i], params, schedule, config.reading);
    std::vector<std::pair<std::uint64_t, double>> samples;
    for (const auto& [q, count] : report.curves[i].samples) {
      samples.emplace_back(q, static_cast<double>(count));
    }
    report.fits[i] = fit_exponent(samples);
  });
  std::vector<double> slopes;
  for (const auto& f : report.fits) slopes.push_back(f.slope);
  report.median_slope = median(slopes);
  std::vector<std::pair<std::uint64_t, double>> median_curve;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    std::vector<double> values;
    for (const auto& c : report.curves) values.push_back(static_cast<double>(c.samples[j].second));
    median_curve.emplace_back(schedule[j], median(values));
  }
  report.median_curve_fit = fit_exponent(median_curve);
  return report;
}

Table GrowthReport::curve_table() const {
  Table t{{"alpha_index", "Q", "N"}, {}};
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (const auto& [q, count] : curves[i].samples) {
      t.add_row({std::to_string(i), std::to_string(q), std::to_string(count)});
    }
  }
  return t;
}

Table GrowthReport::fit_table() const {
  Table t{{"alpha_index", "alpha", "slope", "slope_rational", "intercept", "residual", "window_lo",
           "window_hi"},
          {}};
  auto add = [&](const std::string& index, const std::string& alpha, const ExponentFit& f) {
    t.add_row({index, alpha, fmt(f.slope), to_string(f.slope_rational), fmt(f.intercept),
               fmt(f.residual), std::to_string(f.window_lo), std::to_string(f.window_hi)});
  };
  for (std::size_t i = 0; i < fits.size(); ++i) add(std::to_string(i), alphas[i].describe(), fits[i]);
  add("median_curve", "median", median_curve_fit);
  return t;
}

// ------------------------------------------------------------ critical band

CriticalBandReport critical_band_experiment(const ExperimentConfig& config) {
  const Rational d(config.poly.degree());
  if (config.tau <= d || config.tau >= d + 1) {
    throw PreconditionError("critical band experiment needs d < tau < d + 1");
  }
  CriticalBandReport report;
  report.growth = growth_exponent_experiment(config);
  report.growth.echo.front().second = "critical_band";
  const Rational critical = d + 1 - config.tau;
  report.growth.echo.emplace_back("critical_eps", to_string(critical));
  report.growth.echo.emplace_back("slope_threshold", fmt(config.slope_threshold));
  std::size_t pass = 0;
  for (const auto& f : report.growth.fits) {
    const bool ok = f.slope <= config.slope_threshold;
    report.subpolynomial.push_back(ok);
    pass += ok;
  }
  report.fraction_subpolynomial =
      static_cast<double>(pass) / static_cast<double>(report.growth.fits.size());
  return report;
}

Table CriticalBandReport::table() const {
  Table t = growth.fit_table();
  t.columns.push_back("verdict");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (i < subpolynomial.size()) {
      t.rows[i].push_back(subpolynomial[i] ? "subpolynomial" : "polynomial");
    } else {
      t.rows[i].push_back("fraction_subpolynomial=" + fmt(fraction_subpolynomial));
    }
  }
  return t;
}

// ---------------------------------------------------------------- emptiness

EmptinessReport emptiness_experiment(const ExperimentConfig& config) {
  if (config.quiet_lo == 0 || config.quiet_hi < config.quiet_lo) {
    throw PreconditionError("emptiness window must satisfy 1 <= lo <= hi");
  }
  EmptinessReport report;
  report.echo = config_echo(config, "emptiness");
  report.echo.emplace_back("count_source", "exact_scan");
  report.echo.emplace_back("window", std::to_string(config.quiet_lo) + ".." +
                                         std::to_string(config.quiet_hi));
  const auto alphas = config_alphas(config, config.quiet_hi);
  report.echo.emplace_back("alpha_provenance", alphas.front().describe() + "..");
  report.rows.resize(alphas.size(), EmptinessRow{alphas.front(), 0, std::nullopt, 0});
  ScanParams params = scan_params(config);
  params.qmin = 1;
  params.qmax = config.quiet_hi;
  parallel_for(alphas.size(), config.threads, [&](std::size_t i) {
    EmptinessRow row{alphas[i], 0, std::nullopt, 0};
    for (const auto& hit : find_hits(alphas[i], params)) {
      if (hit.q < config.quiet_lo) {
        ++row.hits_below_window;
        continue;
      }
      if (!row.first_hit) row.first_hit = hit.q;
      ++row.hits_in_window;
    }
    report.rows[i] = std::move(row);
  });
  std::size_t empty = 0;
  for (const auto& row : report.rows) empty += row.hits_in_window == 0;
  report.fraction_empty = static_cast<double>(empty) / static_cast<double>(report.rows.size());
  return report;
}

Table EmptinessReport::table() const {
  Table t{{"alpha_index", "alpha", "hits_below_window", "hits_in_window", "first_hit_q", "empty"},
          {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    t.add_row({std::to_string(i), r.alpha.describe(), std::to_string(r.hits_below_window),
               std::to_string(r.hits_in_window),
               r.first_hit ? std::to_string(*r.first_hit) : std::string("none"),
               r.hits_in_window == 0 ? "yes" : "no"});
  }
  return t;
}

// ------------------------------------------------------------------ s-volume

SVolumeResult svolume_experiment(const AlphaValue& alpha, const ExperimentConfig& config) {
  if (config.s_grid.empty()) throw PreconditionError("s-volume experiment needs an s grid");
  for (const auto& s : config.s_grid) {
    if (sgn(s) <= 0 || s > 1) throw PreconditionError("s grid must lie in (0, 1]");
  }
  const auto schedule = resolve(config.schedule, 2, std::uint64_t{1} << 16);
  const unsigned d = config.poly.degree();
  const std::int64_t a_d = config.poly.a_d();
  ScanParams params = scan_params(config);
  params.qmin = 1;
  params.qmax = schedule.back();
  const auto hits = find_hits(alpha, params);
  std::vector<std::uint64_t> counts;
  for (const auto& h : hits) counts.push_back(count_solutions(h.b, h.q, d, a_d));

  SVolumeResult result{alpha, schedule, {}, std::nullopt};
  auto grid = config.s_grid;
  std::sort(grid.begin(), grid.end());
  for (const Rational& s : grid) {
    SVolumeSeries series{s, {}, Verdict::kInconclusive};
    Interval acc = Interval::point(0);
    std::size_t next = 0;
    const Rational exponent = -config.tau * s;
    for (std::uint64_t big_q : schedule) {
      for (; next < hits.size() && hits[next].q <= big_q; ++next) {
        const Interval term = power_enclosure(to_integer(hits[next].q), exponent, config.cover.bits)
                                  .scaled(Rational(to_integer(2 * counts[next])));
        acc += round_outward(term, config.cover.bits);
      }
      series.sums.push_back(acc);
    }
    std::vector<double> mids;
    for (const auto& v : series.sums) mids.push_back(to_double(v.midpoint()));
    series.verdict = classify_partial_sums(mids, config.rules);
    if (!result.critical_s && series.verdict == Verdict::kConverging) result.critical_s = s;
    result.series.push_back(std::move(series));
  }
  return result;
}

SVolumeReport svolume_sweep(const ExperimentConfig& config) {
  const auto schedule = resolve(config.schedule, 2, std::uint64_t{1} << 16);
  SVolumeReport report;
  report.echo = config_echo(config, "svolume");
  report.echo.emplace_back("count_source", "exact_scan+count_solutions");
  report.echo.emplace_back("resolved_schedule", schedule_text(schedule));
  const auto alphas = config_alphas(config, schedule.back());
  report.echo.emplace_back("alpha_provenance", alphas.front().describe() + "..");
  std::string grid;
  for (std::size_t i = 0; i < config.s_grid.size(); ++i) {
    grid += (i ? ";" : "") + to_string(config.s_grid[i]);
  }
  report.echo.emplace_back("s_grid", grid);
  ExperimentConfig inner = config;
  inner.schedule = schedule;
  report.results.resize(alphas.size(), SVolumeResult{alphas.front(), {}, {}, std::nullopt});
  parallel_for(alphas.size(), config.threads,
               [&](std::size_t i) { report.results[i] = svolume_experiment(alphas[i], inner); });
  std::vector<double> stars;
  for (const auto& r : report.results) {
    if (r.critical_s) stars.push_back(to_double(*r.critical_s));
  }
  if (!stars.empty()) {
    report.median_critical_s = median(stars);
    report.critical_s_spread = quantile(stars, 0.75) - quantile(stars, 0.25);
  }
  return report;
}

Table SVolumeReport::table() const {
  Table t{{"alpha_index", "s", "Q", "volume_lo", "volume_hi", "verdict"}, {}};
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& series : results[i].series) {
      for (std::size_t j = 0; j < series.sums.size(); ++j) {
        t.add_row({std::to_string(i), to_string(series.s), std::to_string(results[i].schedule[j]),
                   fmt(to_double(series.sums[j].lo)), fmt(to_double(series.sums[j].hi)),
                   std::string(to_string(series.verdict))});
      }
    }
  }
  return t;
}

Table SVolumeReport::summary_table() const {
  Table t{{"alpha_index", "alpha", "critical_s"}, {}};
  for (std::size_t i = 0; i < results.size(); ++i) {
    t.add_row({std::to_string(i), results[i].alpha.describe(),
               results[i].critical_s ? to_string(*results[i].critical_s) : std::string("none")});
  }
  t.add_row({"median", "", median_critical_s ? fmt(*median_critical_s) : std::string("none")});
  t.add_row({"iqr", "", fmt(critical_s_spread)});
  return t;
}

}  // namespace dapprox
