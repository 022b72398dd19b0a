#include "ffgeom/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "ffgeom/certify.hpp"
#include "ffgeom/error.hpp"
#include "ffgeom/gen.hpp"
#include "ffgeom/numeric.hpp"
#include "ffgeom/oracle.hpp"
#include "ffgeom/stats.hpp"
#include "ffgeom/trees.hpp"

namespace ffgeom {
namespace {

constexpr std::string_view kFilePrefix = "file:";

bool is_file_source(const std::string& text) { return text.starts_with(kFilePrefix); }

bool needs_tree(const std::string& selection) {
  return selection == "trees" || selection == "M_condition" || selection == "certify";
}

bool is_audit(const std::string& selection) {
  return selection == "triple_bound" || selection == "bisector_bound" ||
         selection == "incidence_bound" || selection == "K_constant" ||
         selection == "M_condition" || selection == "planted_violation";
}

bool known_selection(const std::string& selection) {
  return selection == "T*" || selection == "Q" || selection == "trees" ||
         selection == "certify" || is_audit(selection);
}

TripleMode triple_mode(const std::string& mode) {
  if (mode.empty() || mode == "paper") return TripleMode::paper;
  if (mode == "strict") return TripleMode::strict;
  fail(errc::config_error, "T* accepts mode paper or strict, got '" + mode + "'");
}

EnergyVariant energy_variant(const std::string& mode) {
  if (mode.empty() || mode == "paper") return EnergyVariant::paper;
  if (mode == "symmetric") return EnergyVariant::symmetric;
  fail(errc::config_error, "Q accepts mode paper or symmetric, got '" + mode + "'");
}

CountMode count_mode(const std::string& mode) {
  if (mode.empty() || mode == "nonzero") return CountMode::nonzero;
  if (mode == "all") return CountMode::all;
  fail(errc::config_error, "trees accepts mode all or nonzero, got '" + mode + "'");
}

void validate(const ExperimentConfig& config) {
  if (config.instances == 0) fail(errc::config_error, "instances must be at least 1");
  if (config.selections.empty()) fail(errc::config_error, "no selections configured");
  bool tree_needed = false;
  for (const std::string& selection : config.selections) {
    if (!known_selection(selection))
      fail(errc::config_error, "unknown selection '" + selection + "'");
    tree_needed = tree_needed || needs_tree(selection);
    // Surface mode mismatches before any instance runs.
    if (selection == "T*") triple_mode(config.mode);
    if (selection == "Q") energy_variant(config.mode);
    if (selection == "trees") count_mode(config.mode);
  }
  try {
    make_field(config.p, config.e);
    if (!is_file_source(config.source_e)) parse_gen_spec(config.source_e, 0);
    if (!config.source_f.empty() && !is_file_source(config.source_f))
      parse_gen_spec(config.source_f, 0);
    if (tree_needed) {
      if (config.tree_text.empty())
        fail(errc::config_error, "selection requires --tree");
      parse_tree_spec(config.tree_text);
    }
  } catch (const Error& err) {
    if (err.code() == errc::config_error) throw;
    fail(errc::config_error, err.what());
  }
}

PointSet resolve_source(const FieldCtx& ctx, const std::string& text, std::uint64_t seed) {
  if (is_file_source(text)) {
    const std::string path = text.substr(kFilePrefix.size());
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open point-set file '" + path + "'");
    PointSet set = read_point_set(in);
    if (!(set.ctx() == ctx))
      fail(errc::config_error, "point-set file '" + path + "' is over a different field");
    return set;
  }
  return generate(ctx, parse_gen_spec(text, seed));
}

// Fixed derivation so E and F draw decorrelated streams from one instance seed.
std::uint64_t f_seed_for(std::uint64_t instance_seed) { return SplitMix64(instance_seed).next(); }

LineMultiset bisector_lines(const PointSet& E) {
  LineMultiset lines;
  const auto& pts = E.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      lines.add(bisector(E.ctx(), pts[i], pts[j]));
  return lines;
}

void fill_from_audit(const AuditReport& audit, ReportRow& row) {
  row.statistic = audit.inequality;
  row.value = std::to_string(audit.lhs);
  row.bound = audit.rhs;
  row.holds = audit.holds;
  row.borderline = audit.borderline;
  row.premise_in_range = audit.premise_in_range;
}

ReportRow run_selection(const ExperimentConfig& config, const FieldCtx& ctx,
                        const std::string& selection, const PointSet& E, const PointSet& F) {
  ReportRow row;
  row.n_E = E.size();
  row.n_F = F.size();

  if (selection == "T*") {
    const TripleMode mode = triple_mode(config.mode);
    row.statistic = "T*";
    row.mode = mode == TripleMode::paper ? "paper" : "strict";
    row.value = std::to_string(isosceles_triples(F, E, mode).value);
  } else if (selection == "Q") {
    const EnergyVariant variant = energy_variant(config.mode);
    row.statistic = "Q";
    row.mode = variant == EnergyVariant::paper ? "paper" : "symmetric";
    row.value = std::to_string(bisector_energy(E, variant));
  } else if (selection == "trees") {
    if (E.empty()) fail(errc::empty_input, "trees selection needs a nonempty set");
    const CountMode mode = count_mode(config.mode);
    const TreeSpec tree = parse_tree_spec(config.tree_text);
    const PlanePoint pin = E.points().front();
    const std::uint64_t exact = count_distinct_pinned_trees(ctx, tree, pin, E, mode,
                                                            config.certify.enumeration_budget);
    const LowerBound lower = pinned_tree_lower_bound(ctx, tree, pin, E, config.certify);
    row.statistic = "trees";
    row.mode = mode == CountMode::nonzero ? "nonzero" : "all";
    row.value = std::to_string(exact);
    row.bound = std::to_string(lower.value);
    row.holds = lower.value <= exact;
  } else if (selection == "triple_bound") {
    fill_from_audit(audit_triple_bound(E), row);
  } else if (selection == "bisector_bound") {
    fill_from_audit(audit_bisector_bound(E), row);
  } else if (selection == "incidence_bound") {
    fill_from_audit(audit_incidence_bound(F, bisector_lines(E)), row);
  } else if (selection == "K_constant") {
    fill_from_audit(audit_K_constant(E, config.certify.K), row);
  } else if (selection == "M_condition") {
    const TreeSpec tree = parse_tree_spec(config.tree_text);
    fill_from_audit(audit_M_condition(E, F, tree.k(), config.certify.K), row);
  } else if (selection == "certify") {
    const TreeSpec tree = parse_tree_spec(config.tree_text);
    const Certificate cert = certify_tree(E, F, tree, config.certify);
    row.statistic = "certify";
    row.mode = regime_name(cert.regime);
    row.value = std::to_string(cert.pins.size());
    row.bound = std::to_string(cert.per_pin_bound);
    row.holds = cert.sound && check_certificate(cert, E, F, tree);
    row.premise_in_range = cert.hypothesis_in_range;
  } else if (selection == "planted_violation") {
    row.statistic = "planted_violation";
    row.value = "1";
    row.bound = "0";
    row.holds = false;
    row.borderline = false;
    row.premise_in_range = true;
  } else {
    fail(errc::config_error, "unknown selection '" + selection + "'");
  }
  return row;
}

std::vector<ReportRow> run_instance(const ExperimentConfig& config, const FieldCtx& ctx,
                                    std::uint64_t instance) {
  const std::uint64_t instance_seed = config.seed + instance;
  const PointSet E = resolve_source(ctx, config.source_e, instance_seed);
  const PointSet F = config.source_f.empty()
                         ? E
                         : resolve_source(ctx, config.source_f, f_seed_for(instance_seed));

  std::vector<ReportRow> rows;
  rows.reserve(config.selections.size());
  for (const std::string& selection : config.selections) {
    const auto start = std::chrono::steady_clock::now();
    ReportRow row = run_selection(config, ctx, selection, E, F);
    const auto stop = std::chrono::steady_clock::now();
    row.run_id = instance;
    row.seed = instance_seed;
    row.p = config.p;
    row.e = config.e;
    row.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
    rows.push_back(std::move(row));
  }
  return rows;
}

unsigned worker_count(std::uint64_t instances) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("FFGEOM_THREADS")) {
    unsigned requested = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), requested);
    if (ec != std::errc{} || ptr != text.data() + text.size() || requested == 0)
      fail(errc::config_error, "FFGEOM_THREADS must be a positive integer, got '" +
                                   std::string(text) + "'");
    workers = requested;
  }
  if (workers > instances) workers = static_cast<unsigned>(instances);
  return workers;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const FieldCtx ctx = make_field(config.p, config.e);

  std::vector<std::vector<ReportRow>> slots(config.instances);
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto work = [&] {
    while (true) {
      const std::uint64_t instance = next.fetch_add(1);
      if (instance >= config.instances) return;
      {
        std::scoped_lock lock(error_mutex);
        if (first_error) return;
      }
      try {
        slots[instance] = run_instance(config, ctx, instance);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const unsigned workers = worker_count(config.instances);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ExperimentResult result;
  for (std::vector<ReportRow>& rows : slots)
    for (ReportRow& row : rows) result.report.rows.push_back(std::move(row));

  for (const ReportRow& row : result.report.rows)
    if (is_audit(row.statistic) && row.holds.has_value() && !*row.holds) result.exit_status = 2;

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) fail(errc::io_error, "cannot open output file '" + config.out_path + "'");
    out << export_report(result.report, config.format);
    if (!out) fail(errc::io_error, "write to '" + config.out_path + "' failed");
  }
  return result;
}

}  // namespace ffgeom
