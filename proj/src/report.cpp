#include "ffgeom/report.hpp"

#include <json.hpp>

#include "ffgeom/error.hpp"

namespace ffgeom {
namespace {

constexpr const char* kHeader =
    "run_id,seed,p,e,n_E,n_F,statistic,mode,value,bound,holds,borderline,premise_in_range,"
    "elapsed_ms";

std::string csv_cell(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string flag_cell(const std::optional<bool>& flag) {
  if (!flag.has_value()) return "";
  return *flag ? "true" : "false";
}

nlohmann::json flag_json(const std::optional<bool>& flag) {
  if (!flag.has_value()) return nullptr;
  return *flag;
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  fail(errc::parse_error, "unknown report format '" + name + "'");
}

const char* report_format_name(ReportFormat format) {
  return format == ReportFormat::csv ? "csv" : "json";
}

std::string to_csv(const Report& report) {
  std::string out = kHeader;
  out += '\n';
  for (const ReportRow& row : report.rows) {
    out += std::to_string(row.run_id);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += std::to_string(row.p);
    out += ',';
    out += std::to_string(row.e);
    out += ',';
    out += std::to_string(row.n_E);
    out += ',';
    out += std::to_string(row.n_F);
    out += ',';
    out += csv_cell(row.statistic);
    out += ',';
    out += csv_cell(row.mode);
    out += ',';
    out += csv_cell(row.value);
    out += ',';
    out += csv_cell(row.bound);
    out += ',';
    out += flag_cell(row.holds);
    out += ',';
    out += flag_cell(row.borderline);
    out += ',';
    out += flag_cell(row.premise_in_range);
    out += ',';
    out += std::to_string(row.elapsed_ms);
    out += '\n';
  }
  return out;
}

std::string to_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : report.rows) {
    rows.push_back({
        {"run_id", row.run_id},
        {"seed", std::to_string(row.seed)},
        {"p", row.p},
        {"e", row.e},
        {"n_E", row.n_E},
        {"n_F", row.n_F},
        {"statistic", row.statistic},
        {"mode", row.mode},
        {"value", row.value},
        {"bound", row.bound},
        {"holds", flag_json(row.holds)},
        {"borderline", flag_json(row.borderline)},
        {"premise_in_range", flag_json(row.premise_in_range)},
        {"elapsed_ms", row.elapsed_ms},
    });
  }
  return rows.dump(2) + "\n";
}

std::string export_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::csv ? to_csv(report) : to_json(report);
}

std::string csv_without_elapsed(const std::string& csv) {
  std::string out;
  out.reserve(csv.size());
  std::size_t line_start = 0;
  while (line_start < csv.size()) {
    std::size_t line_end = csv.find('\n', line_start);
    if (line_end == std::string::npos) line_end = csv.size();
    // The elapsed_ms cell is never quoted, so the last comma ends the kept part.
    const std::size_t last_comma = csv.rfind(',', line_end);
    const std::size_t keep_end =
        (last_comma == std::string::npos || last_comma < line_start) ? line_end : last_comma;
    out.append(csv, line_start, keep_end - line_start);
    out += '\n';
    line_start = line_end + 1;
  }
  return out;
}

}  // namespace ffgeom
