// Command-line surface: seeded point-set generation, statistic sweeps,
// inequality audits, tree-count experiments, and certificate production.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffgeom/certify.hpp"
#include "ffgeom/error.hpp"
#include "ffgeom/experiment.hpp"
#include "ffgeom/gen.hpp"
#include "ffgeom/numeric.hpp"
#include "ffgeom/plane.hpp"
#include "ffgeom/trees.hpp"

namespace {

using namespace ffgeom;

struct CommonFlags {
  std::uint32_t p = 3;
  std::uint32_t ext = 1;
  std::uint64_t seed = 1;
  std::string tree;
  std::string mode;
  std::string out;
  std::string format = "csv";
  std::uint64_t budget = 10'000'000;
};

void add_common(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("--p", flags.p, "field characteristic (odd prime)");
  cmd.add_option("--ext", flags.ext, "extension degree e of F_{p^e}");
  cmd.add_option("--seed", flags.seed, "base seed; instance i uses seed + i");
  cmd.add_option("--tree", flags.tree, "tree spec 'vertices=<n> edges=<i>-<j>,... pin=<v>'");
  cmd.add_option("--mode", flags.mode, "statistic mode (paper|strict|symmetric|all|nonzero)");
  cmd.add_option("--out", flags.out, "output path (default: stdout)");
  cmd.add_option("--format", flags.format, "report format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--budget", flags.budget, "enumeration budget for exact tree counts");
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(errc::io_error, "cannot open output file '" + out_path + "'");
  out << text;
  if (!out) fail(errc::io_error, "write to '" + out_path + "' failed");
}

ExperimentConfig base_config(const CommonFlags& flags, const std::string& source_e,
                             const std::string& source_f, std::uint64_t instances) {
  ExperimentConfig config;
  config.p = flags.p;
  config.e = flags.ext;
  config.source_e = source_e;
  config.source_f = source_f;
  config.tree_text = flags.tree;
  config.mode = flags.mode;
  config.seed = flags.seed;
  config.instances = instances;
  config.certify.enumeration_budget = flags.budget;
  config.format = parse_report_format(flags.format);
  config.out_path = flags.out;
  return config;
}

int emit(const ExperimentResult& result, const ExperimentConfig& config) {
  if (config.out_path.empty()) std::cout << export_report(result.report, config.format);
  return result.exit_status;
}

int run_gen(const CommonFlags& flags, const std::string& source) {
  const FieldCtx ctx = make_field(flags.p, flags.ext);
  const PointSet set = generate(ctx, parse_gen_spec(source, flags.seed));
  if (flags.out.empty()) {
    write_point_set(std::cout, set);
    return 0;
  }
  std::ofstream out(flags.out);
  if (!out) fail(errc::io_error, "cannot open output file '" + flags.out + "'");
  write_point_set(out, set);
  if (!out) fail(errc::io_error, "write to '" + flags.out + "' failed");
  return 0;
}

int run_certify(const CommonFlags& flags, const std::string& source_e,
                const std::string& source_f, const std::string& regime, const std::string& K,
                const std::string& threshold_rule, const std::string& split, bool check) {
  ExperimentConfig config = base_config(flags, source_e, source_f, 1);
  const FieldCtx ctx = make_field(config.p, config.e);
  const PointSet E = generate(ctx, parse_gen_spec(source_e, flags.seed));
  const PointSet F =
      source_f.empty() ? E : generate(ctx, parse_gen_spec(source_f, SplitMix64(flags.seed).next()));

  CertifyParams params;
  params.regime = parse_regime(regime);
  params.K = parse_rational(K);
  params.threshold_rule = threshold_rule;
  params.split_strategy = parse_split_strategy(split);
  params.enumeration_budget = flags.budget;

  const TreeSpec tree = parse_tree_spec(flags.tree);
  const Certificate cert = certify_tree(E, F, tree, params);
  write_text(flags.out, certificate_to_json(cert));

  std::cerr << "regime=" << regime_name(cert.regime) << " pins=" << cert.pins.size()
            << " per_pin_bound=" << cert.per_pin_bound
            << " hypothesis_in_range=" << (cert.hypothesis_in_range ? "true" : "false") << "\n";
  if (check && !check_certificate(cert, E, F, tree)) {
    std::cerr << "certificate check failed\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite-plane distance experiments"};
  app.require_subcommand(1);

  CommonFlags flags;

  // gen: write one seeded point set in the text format.
  auto* gen_cmd = app.add_subcommand("gen", "generate a point set");
  std::string gen_source = "random:8";
  add_common(*gen_cmd, flags);
  gen_cmd->add_option("--set", gen_source, "generator '<kind>:<size>'");

  // stats: statistic sweep (T*, Q, trees) over seeded instances.
  auto* stats_cmd = app.add_subcommand("stats", "statistic sweep");
  std::vector<std::string> stats_select;
  std::string stats_e = "random:8", stats_f;
  std::uint64_t stats_instances = 1;
  add_common(*stats_cmd, flags);
  stats_cmd->add_option("--stat", stats_select, "statistics to run (T*|Q|trees)")
      ->required()
      ->check(CLI::IsMember({"T*", "Q", "trees"}));
  stats_cmd->add_option("--E", stats_e, "E source '<kind>:<size>' or 'file:<path>'");
  stats_cmd->add_option("--F", stats_f, "F source (default: F = E)");
  stats_cmd->add_option("--instances", stats_instances, "sweep width");

  // audit: inequality audits over seeded instances; exit 2 on any violation.
  auto* audit_cmd = app.add_subcommand("audit", "inequality audit sweep");
  std::vector<std::string> audit_select;
  std::string audit_e = "random:8", audit_f, audit_K = "4";
  std::uint64_t audit_instances = 1;
  add_common(*audit_cmd, flags);
  audit_cmd
      ->add_option("--check", audit_select,
                   "audits to run (triple_bound|bisector_bound|incidence_bound|K_constant|"
                   "M_condition|planted_violation)")
      ->required()
      ->check(CLI::IsMember({"triple_bound", "bisector_bound", "incidence_bound", "K_constant",
                             "M_condition", "planted_violation"}));
  audit_cmd->add_option("--E", audit_e, "E source '<kind>:<size>' or 'file:<path>'");
  audit_cmd->add_option("--F", audit_f, "F source (default: F = E)");
  audit_cmd->add_option("--K", audit_K, "tree-count constant (rational)");
  audit_cmd->add_option("--instances", audit_instances, "sweep width");

  // certify: one extraction certificate as JSON.
  auto* certify_cmd = app.add_subcommand("certify", "produce an extraction certificate");
  std::string cert_e = "random:8", cert_f, cert_regime = "arbitrary", cert_K = "4";
  std::string cert_rule = "default", cert_split = "alternating";
  bool cert_check = false;
  add_common(*certify_cmd, flags);
  certify_cmd->add_option("--E", cert_e, "E source '<kind>:<size>'");
  certify_cmd->add_option("--F", cert_f, "F source (default: F = E)");
  certify_cmd->add_option("--regime", cert_regime,
                          "medium_prime|large_prime|large_q|arbitrary|auto_prime");
  certify_cmd->add_option("--K", cert_K, "tree-count constant (rational, >= 4)");
  certify_cmd->add_option("--threshold-rule", cert_rule, "'default' or 'fixed:<rational>'");
  certify_cmd->add_option("--split", cert_split, "pool split strategy (alternating|halves)");
  certify_cmd->add_flag("--verify", cert_check, "re-check the certificate before exiting");

  // trees: exact distinct-tree counts against the sound lower bound.
  auto* trees_cmd = app.add_subcommand("trees", "pinned tree-count sweep");
  std::string trees_e = "random:8";
  std::uint64_t trees_instances = 1;
  add_common(*trees_cmd, flags);
  trees_cmd->add_option("--E", trees_e, "pool source '<kind>:<size>' or 'file:<path>'");
  trees_cmd->add_option("--instances", trees_instances, "sweep width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Normalize usage errors to exit 1; --help stays 0.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(flags, gen_source);
    if (stats_cmd->parsed()) {
      ExperimentConfig config = base_config(flags, stats_e, stats_f, stats_instances);
      config.selections = stats_select;
      return emit(run_experiment(config), config);
    }
    if (audit_cmd->parsed()) {
      ExperimentConfig config = base_config(flags, audit_e, audit_f, audit_instances);
      config.selections = audit_select;
      config.certify.K = parse_rational(audit_K);
      return emit(run_experiment(config), config);
    }
    if (certify_cmd->parsed())
      return run_certify(flags, cert_e, cert_f, cert_regime, cert_K, cert_rule, cert_split,
                         cert_check);
    if (trees_cmd->parsed()) {
      ExperimentConfig config = base_config(flags, trees_e, "", trees_instances);
      config.selections = {"trees"};
      return emit(run_experiment(config), config);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
