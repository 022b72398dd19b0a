#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ffgeom {

// One (instance, statistic) result.  value and bound are decimal strings so
// quantities beyond 2^53 survive CSV and JSON round trips unchanged; flag
// columns are empty when the statistic carries no verdict.
struct ReportRow {
  std::uint64_t run_id = 0;
  std::uint64_t seed = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::uint64_t n_E = 0;
  std::uint64_t n_F = 0;
  std::string statistic;
  std::string mode;
  std::string value;
  std::string bound;
  std::optional<bool> holds;
  std::optional<bool> borderline;
  std::optional<bool> premise_in_range;
  std::uint64_t elapsed_ms = 0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  std::vector<ReportRow> rows;
};

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& name);
const char* report_format_name(ReportFormat format);

// Fixed column order: run_id, seed, p, e, n_E, n_F, statistic, mode, value,
// bound, holds, borderline, premise_in_range, elapsed_ms.  Absent flags are
// empty cells; fields containing the delimiter are quoted.
std::string to_csv(const Report& report);

// Array of row objects with the same fields; seed, value and bound are
// decimal strings, absent flags are null.
std::string to_json(const Report& report);

std::string export_report(const Report& report, ReportFormat format);

// Drops the elapsed_ms column from a CSV rendering; elapsed_ms is the one
// column excluded from determinism guarantees.
std::string csv_without_elapsed(const std::string& csv);

}  // namespace ffgeom
