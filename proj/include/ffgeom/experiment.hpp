#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffgeom/params.hpp"
#include "ffgeom/report.hpp"

namespace ffgeom {

// Declarative sweep description.  Instance i (its run_id) redraws every
// generated set with seed `seed + i` and evaluates each selection in order.
struct ExperimentConfig {
  std::uint32_t p = 3;
  std::uint32_t e = 1;
  // Point-set sources: "<kind>:<size>" draws per instance seed,
  // "file:<path>" loads a fixed set in the point-set text format.
  std::string source_e = "random:8";
  std::string source_f;  // empty: F is the same set as E
  // Evaluated per instance, in order.  Statistics: "T*", "Q", "trees".
  // Audits: "triple_bound", "bisector_bound", "incidence_bound",
  // "K_constant", "M_condition".  Certification: "certify".
  // "planted_violation" always reports a failing audit row (exit-path probe).
  std::vector<std::string> selections;
  std::string tree_text;  // required by trees / M_condition / certify
  std::string mode;       // statistic mode override; empty keeps defaults
  std::uint64_t seed = 1;
  std::uint64_t instances = 1;
  CertifyParams certify;
  ReportFormat format = ReportFormat::csv;
  std::string out_path;  // empty: caller renders the report itself
};

struct ExperimentResult {
  Report report;
  // 0 on success; 2 when any audit row reported a violation.  Violations are
  // findings carried in the rows, never exceptions.
  int exit_status = 0;
};

// Validates the config, runs the instances across a worker pool (size capped
// by the FFGEOM_THREADS environment variable), buffers rows in run_id order,
// and writes the rendered report to out_path when one is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace ffgeom
