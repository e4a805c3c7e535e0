#pragma once

// Tabular output shared by the CLI and the experiment drivers: CSV or
// JSON-lines with identical field names, a '#'-prefixed config echo, and
// plain two-column data files for external plotting.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dapprox/counting.hpp"
#include "dapprox/covers.hpp"
#include "dapprox/curve.hpp"
#include "dapprox/residues.hpp"

namespace dapprox {

/// Library version string embedded in every report.
std::string_view version();

enum class OutputFormat { kCsv, kJsonLines };

/// "csv" or "jsonl"/"json"; throws PreconditionError otherwise.
OutputFormat parse_output_format(std::string_view text);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Ordered key/value config echo.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// CSV: '# key=value' lines, a header row, then data rows. JSON-lines: one
/// {"config": {...}} object when an echo is given, then one object per row.
/// Integer-looking cells become JSON numbers, everything else stays a string.
void write_table(std::ostream& out, const Table& table, OutputFormat format,
                 const ConfigEcho& echo = {});

/// Whitespace-separated "x y" lines, preceded by a '#' title line.
void write_gnuplot(std::ostream& out, std::string_view title,
                   const std::vector<std::pair<double, double>>& points);

Table profile_table(const std::vector<PowerResidueProfile>& profiles);
Table residue_set_table(const ResidueSet& set);
Table cover_table(const std::vector<CoverRecord>& records);
Table hit_table(const std::vector<ConstrainedHit>& hits, const std::string& flags_passed);
Table curve_table(const CountCurve& curve);

}  // namespace dapprox
