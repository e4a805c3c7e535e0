#pragma once

// Desk-scale drivers for the metric statements: the tau = d+1 convergence
// threshold of the cover series, the growth exponent of N(Q, alpha, eps,
// delta), the critical band eps = 1+d-tau, emptiness above d+1, and the
// s-volume sums. Every driver returns typed results plus a table and a
// config echo for reporting.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dapprox/alpha.hpp"
#include "dapprox/counting.hpp"
#include "dapprox/covers.hpp"
#include "dapprox/polynomial.hpp"
#include "dapprox/report.hpp"

namespace dapprox {

inline constexpr std::uint64_t kDefaultSeed = 1729;

/// start, start*ratio, ... up to and including the last value <= last.
std::vector<std::uint64_t> geometric_schedule(std::uint64_t start, std::uint64_t ratio,
                                              std::uint64_t last);

/// Best rational approximation with denominator at most max_den.
Rational rational_approximation(double x, std::uint64_t max_den = 1000);

struct ExponentFit {
  std::vector<std::pair<double, double>> points;  // (log Q, log max(N, 1)) inside the window
  double slope = 0;
  Rational slope_rational;
  double intercept = 0;
  double residual = 0;  // root mean square of the fit residuals
  std::uint64_t window_lo = 0;
  std::uint64_t window_hi = 0;
};

/// Least squares of log max(N, 1) on log Q over the top half of the samples
/// (the last ceil(n/2) points). Needs at least two points in the window.
ExponentFit fit_exponent(const std::vector<std::pair<std::uint64_t, double>>& samples);

struct VerdictRules {
  double flatten_factor = 1.5;      // each of the last three increments shrinks by this
  double unbounded_multiple = 10;   // total must exceed this many first increments
  double logarithmic_band = 1.2;    // last three increment ratios within [1/b, b]
};

enum class Verdict { kConverging, kDiverging, kDivergingLogarithmic, kInconclusive };
std::string_view to_string(Verdict verdict);

/// Classifies a partial-sum sequence sampled along a schedule. Increments
/// are consecutive differences; a pair of zero increments counts as
/// shrinking.
///   converging:               the last three increments each shrink by >= flatten_factor
///   diverging (logarithmic):  the last three increment ratios stay within the
///                             logarithmic band and the sums keep increasing
///   diverging:                increments non-shrinking over the last three
///                             steps and the total exceeds unbounded_multiple
///                             times the first increment
///   inconclusive:             otherwise
Verdict classify_partial_sums(const std::vector<double>& sums, const VerdictRules& rules = {});

struct ExperimentConfig {
  IntPolynomial poly = IntPolynomial::monomial(2, 1);
  std::vector<Rational> taus;       // threshold experiment
  Rational tau = Rational(5, 2);    // the other drivers
  GcdBand band = GcdBand::full();
  CountFlags flags;
  CountReading reading = CountReading::kPowerAtMost;
  std::size_t alpha_count = 20;
  unsigned alpha_bits = 0;          // 0 selects max(128, required_alpha_bits)
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::uint64_t> schedule;  // empty selects the driver's default
  std::uint64_t tail_start = 1;         // first q of the threshold tail sums
  std::uint64_t quiet_lo = 256;         // emptiness window [quiet_lo, quiet_hi]
  std::uint64_t quiet_hi = 65536;
  std::vector<Rational> s_grid;
  double slope_threshold = 0.1;     // critical-band "subpolynomial" cut
  CoverOptions cover{10'000, 64, true};
  VerdictRules rules;
  unsigned threads = 1;
};

/// Common echo: experiment name, version, seed, polynomial, tau, band,
/// reading, alpha sampling and schedule.
ConfigEcho config_echo(const ExperimentConfig& config, const std::string& experiment);

struct ThresholdRow {
  Rational tau;
  std::vector<std::uint64_t> schedule;
  std::vector<Interval> sums;
  Verdict verdict = Verdict::kInconclusive;
  ExponentFit fit;  // of the sums over the top half of the schedule
};

struct ThresholdReport {
  ConfigEcho echo;
  std::vector<ThresholdRow> rows;
  Table table() const;
};

/// Tail sums of cover measures per tau. Default schedule: ratio 4 from 1 to 2^16.
ThresholdReport threshold_experiment(const ExperimentConfig& config);

struct GrowthReport {
  ConfigEcho echo;
  std::vector<AlphaValue> alphas;
  std::vector<CountCurve> curves;
  std::vector<ExponentFit> fits;
  double median_slope = 0;
  ExponentFit median_curve_fit;  // fit of the pointwise median of N
  Table curve_table() const;
  Table fit_table() const;
};

/// Per-alpha exponent fits of N. Default schedule: ratio 2 from 1 to 2^20.
GrowthReport growth_exponent_experiment(const ExperimentConfig& config);

struct CriticalBandReport {
  GrowthReport growth;
  std::vector<bool> subpolynomial;
  double fraction_subpolynomial = 0;
  Table table() const;
};

/// Requires d < tau < d + 1; the band is taken as given (normally
/// eps = 1 + d - tau).
CriticalBandReport critical_band_experiment(const ExperimentConfig& config);

struct EmptinessRow {
  AlphaValue alpha;
  std::uint64_t hits_in_window = 0;
  std::optional<std::uint64_t> first_hit;
  std::uint64_t hits_below_window = 0;
};

struct EmptinessReport {
  ConfigEcho echo;
  std::vector<EmptinessRow> rows;
  double fraction_empty = 0;
  Table table() const;
};

/// Hits with q in [quiet_lo, quiet_hi] per alpha.
EmptinessReport emptiness_experiment(const ExperimentConfig& config);

struct SVolumeSeries {
  Rational s;
  std::vector<Interval> sums;  // V(s, Q) along the schedule
  Verdict verdict = Verdict::kInconclusive;
};

struct SVolumeResult {
  AlphaValue alpha;
  std::vector<std::uint64_t> schedule;
  std::vector<SVolumeSeries> series;
  std::optional<Rational> critical_s;  // smallest grid s with a converging verdict
};

/// V(s, Q) = sum over hits with q <= Q of c(q) 2 q^(-tau s), with c(q) the
/// number of p mod q solving a_d p^d = b. Default schedule: ratio 2 from 1
/// to 2^16 (q <= Q).
SVolumeResult svolume_experiment(const AlphaValue& alpha, const ExperimentConfig& config);

struct SVolumeReport {
  ConfigEcho echo;
  std::vector<SVolumeResult> results;
  std::optional<double> median_critical_s;
  double critical_s_spread = 0;  // interquartile range of the reported s*
  Table table() const;
  Table summary_table() const;
};

SVolumeReport svolume_sweep(const ExperimentConfig& config);

/// The alphas a config samples: dyadic, seeded, with the resolved bit count.
std::vector<AlphaValue> config_alphas(const ExperimentConfig& config, std::uint64_t qmax);

}  // namespace dapprox
