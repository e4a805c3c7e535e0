#include "dapprox/report.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "dapprox/errors.hpp"

#ifndef DAPPROX_VERSION
#define DAPPROX_VERSION "unknown"
#endif

namespace dapprox {
namespace {

bool needs_quotes(const std::string& cell) {
  return cell.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_cell(const std::string& cell) {
  if (!needs_quotes(cell)) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_cell(const std::string& cell) {
  if (!cell.empty() && cell.size() < 19) {
    std::size_t i = cell[0] == '-' ? 1 : 0;
    bool digits = i < cell.size();
    for (; i < cell.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(cell[i]));
    if (digits) return std::stoll(cell);
  }
  return cell;
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << csv_cell(row[i]);
  }
  out << '\n';
}

}  // namespace

std::string_view version() { return DAPPROX_VERSION; }

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "jsonl" || text == "json") return OutputFormat::kJsonLines;
  throw PreconditionError("unknown output format '" + std::string(text) + "'");
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

void write_table(std::ostream& out, const Table& table, OutputFormat format,
                 const ConfigEcho& echo) {
  if (format == OutputFormat::kCsv) {
    for (const auto& [key, value] : echo) out << "# " << key << '=' << value << '\n';
    write_row(out, table.columns);
    for (const auto& row : table.rows) write_row(out, row);
    return;
  }
  if (!echo.empty()) {
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [key, value] : echo) config[key] = value;
    out << nlohmann::ordered_json{{"config", config}}.dump() << '\n';
  }
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
    out << obj.dump() << '\n';
  }
}

void write_gnuplot(std::ostream& out, std::string_view title,
                   const std::vector<std::pair<double, double>>& points) {
  out << "# " << title << '\n';
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& [x, y] : points) out << x << ' ' << y << '\n';
  out.precision(precision);
}

Table profile_table(const std::vector<PowerResidueProfile>& profiles) {
  Table t{{"q", "d", "u", "e", "r"}, {}};
  for (const auto& p : profiles) {
    t.add_row({std::to_string(p.modulus), std::to_string(p.degree), std::to_string(p.u),
               std::to_string(p.e), std::to_string(p.r)});
  }
  return t;
}

Table residue_set_table(const ResidueSet& set) {
  Table t{{"q", "residue"}, {}};
  for (auto x : set.elements) t.add_row({std::to_string(set.modulus), std::to_string(x)});
  return t;
}

Table cover_table(const std::vector<CoverRecord>& records) {
  Table t{{"q", "center_count", "count_source", "measure_lo", "measure_hi"}, {}};
  for (const auto& r : records) {
    t.add_row({std::to_string(r.q), r.center_count.get_str(), std::string(to_string(r.count_source)),
               to_string(r.measure.lo), to_string(r.measure.hi)});
  }
  return t;
}

Table hit_table(const std::vector<ConstrainedHit>& hits, const std::string& flags_passed) {
  Table t{{"q", "b", "error_num", "error_den", "gcd_bq", "flags_passed"}, {}};
  for (const auto& h : hits) {
    t.add_row({std::to_string(h.q), h.b.get_str(), h.error.get_num().get_str(),
               h.error.get_den().get_str(), h.gcd_bq.get_str(), flags_passed});
  }
  return t;
}

Table curve_table(const CountCurve& curve) {
  Table t{{"Q", "N"}, {}};
  for (const auto& [q, n] : curve.samples) t.add_row({std::to_string(q), std::to_string(n)});
  return t;
}

}  // namespace dapprox
