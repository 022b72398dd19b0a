// Acceptance gate: one check per criterion, one PASS/FAIL line each.
// Exit status 0 only when every criterion passes.
#include <sys/wait.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "ffgeom/certify.hpp"
#include "ffgeom/error.hpp"
#include "ffgeom/experiment.hpp"
#include "ffgeom/gen.hpp"
#include "ffgeom/numeric.hpp"
#include "ffgeom/oracle.hpp"
#include "ffgeom/plane.hpp"
#include "ffgeom/report.hpp"
#include "ffgeom/stats.hpp"
#include "ffgeom/trees.hpp"

using namespace ffgeom;

namespace {

int failures = 0;

void verdict(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  %d  %s — %s\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct FieldSpec {
  std::uint32_t p;
  std::uint32_t e;
};

const std::vector<FieldSpec> kSweepFields = {{3, 1},  {5, 1},  {7, 1}, {3, 2},
                                             {11, 1}, {13, 1}, {5, 2}};

PointSet random_set(const FieldCtx& ctx, std::uint64_t n, std::uint64_t seed) {
  return generate(ctx, {GenKind::random, n, 0, seed});
}

TreeSpec random_tree(SplitMix64& rng, std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t v = 2; v <= n; ++v)
    edges.emplace_back(1 + static_cast<std::uint32_t>(rng.bounded(v - 1)), v);
  return make_tree_spec(n, std::move(edges), 1 + static_cast<std::uint32_t>(rng.bounded(n)));
}

LineMultiset mixed_lines(const FieldCtx& ctx, const PointSet& E, SplitMix64& rng,
                         std::uint64_t extra) {
  LineMultiset lines;
  const auto& pts = E.points();
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) lines.add(bisector(ctx, pts[a], pts[b]));
  for (std::uint64_t i = 0; i < extra; ++i) {
    FieldElem a = ctx.element(rng.bounded(ctx.q()));
    FieldElem b = ctx.element(rng.bounded(ctx.q()));
    if (a.rank == 0 && b.rank == 0) a = ctx.one();
    lines.add(make_line(ctx, a, b, ctx.element(rng.bounded(ctx.q()))), 1 + rng.bounded(3));
  }
  return lines;
}

// --- 1: fast statistics match the brute-force oracles -----------------------

bool criterion_oracles(std::string& detail) {
  SplitMix64 rng(0xACCE5501);
  std::uint64_t instances = 0, mismatches = 0;

  for (int round = 0; round < 72; ++round) {
    for (const FieldSpec& fs : kSweepFields) {
      const auto ctx = make_field(fs.p, fs.e);
      const std::uint64_t plane = ctx.q() * ctx.q();

      // Isosceles triples, both modes.
      {
        const std::uint64_t ne = 2 + rng.bounded(std::min<std::uint64_t>(59, plane - 1));
        const std::uint64_t nf = 2 + rng.bounded(std::min<std::uint64_t>(59, plane - 1));
        const PointSet E = random_set(ctx, ne, rng.next());
        const PointSet F = random_set(ctx, nf, rng.next());
        const TripleMode mode = (round % 2 == 0) ? TripleMode::paper : TripleMode::strict;
        ++instances;
        if (isosceles_triples(F, E, mode).value != oracle::isosceles_triples(F, E, mode))
          ++mismatches;
      }
      // Bisector energy, both variants.
      {
        const std::uint64_t n = 2 + rng.bounded(std::min<std::uint64_t>(29, plane - 1));
        const PointSet E = random_set(ctx, n, rng.next());
        const EnergyVariant variant =
            (round % 2 == 0) ? EnergyVariant::paper : EnergyVariant::symmetric;
        ++instances;
        if (bisector_energy(E, variant) != oracle::bisector_energy(E, variant)) ++mismatches;
      }
      // Incidences against a mixed line multiset.
      {
        const std::uint64_t nf = 1 + rng.bounded(std::min<std::uint64_t>(60, plane));
        const PointSet F = random_set(ctx, nf, rng.next());
        const PointSet E =
            random_set(ctx, 2 + rng.bounded(std::min<std::uint64_t>(13, plane - 1)), rng.next());
        const LineMultiset L = mixed_lines(ctx, E, rng, 10);
        ++instances;
        if (incidences(F, L) != oracle::incidences(F, L)) ++mismatches;
      }
      // Distinct pinned trees, k <= 3, pool <= 25.
      {
        const std::uint64_t n = 2 + rng.bounded(std::min<std::uint64_t>(24, plane - 1));
        const PointSet pool = random_set(ctx, n, rng.next());
        const TreeSpec tree = random_tree(rng, 2 + static_cast<std::uint32_t>(rng.bounded(3)));
        const PlanePoint x = {ctx.element(rng.bounded(ctx.q())),
                              ctx.element(rng.bounded(ctx.q()))};
        const CountMode mode = (round % 2 == 0) ? CountMode::nonzero : CountMode::all;
        ++instances;
        if (count_distinct_pinned_trees(ctx, tree, x, pool, mode) !=
            oracle::count_distinct_pinned_trees(ctx, tree, x, pool, mode))
          ++mismatches;
      }
    }
  }
  detail = std::to_string(instances) + " instances (" + std::to_string(instances / 4) +
           " per statistic), " + std::to_string(mismatches) + " mismatches";
  return mismatches == 0 && instances / 4 >= 500;
}

// --- 2: exact anchor values --------------------------------------------------

bool criterion_anchors(std::string& detail) {
  std::vector<std::string> bad;

  const auto f3 = make_field(3);
  const PointSet all3 = PointSet::full_plane(f3);
  if (isosceles_triples(all3, all3).value != 216 ||
      oracle::isosceles_triples(all3, all3) != 216)
    bad.push_back("T*(full F_3^2) != 216");

  const auto pinned = pinned_nonzero_distances({f3.zero(), f3.zero()}, all3);
  if (pinned.size() != 2 || pinned[0].rank != 1 || pinned[1].rank != 2)
    bad.push_back("pinned distance set at the origin != {1,2}");

  const auto f5 = make_field(5);
  const PointSet collinear(
      f5, {{f5.zero(), f5.zero()}, {f5.zero(), f5.one()}, {f5.zero(), f5.from_int(2)}});
  if (bisector_energy(collinear) != 12 || oracle::bisector_energy(collinear) != 12)
    bad.push_back("Q(three collinear over F_5) != 12");

  std::uint64_t circles = 0;
  for (std::uint32_t q = 3; q <= 49; q += 2) {
    std::uint32_t p = 0, e = 0;
    for (std::uint32_t d = 3; d * d <= q; d += 2)
      if (q % d == 0) {
        p = d;
        break;
      }
    if (p == 0) {
      p = q;
      e = 1;
    } else {
      std::uint32_t rest = q;
      e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (rest != 1) continue;  // not a prime power
    }
    const auto ctx = make_field(p, e);
    const int eta = ctx.eta_minus_one();
    const PointSet domain = PointSet::full_plane(ctx);
    for (const PlanePoint center :
         {PlanePoint{ctx.zero(), ctx.zero()}, PlanePoint{ctx.one(), ctx.from_int(2)}}) {
      for (std::uint64_t d = 0; d < ctx.q(); ++d) {
        const FieldElem delta = ctx.element(d);
        const PointSet fast = full_circle_points(ctx, center, delta);
        const std::uint64_t expect =
            d == 0 ? (eta == 1 ? 2 * ctx.q() - 1 : 1) : ctx.q() - static_cast<std::uint64_t>(eta);
        ++circles;
        if (fast.size() != expect) {
          bad.push_back("circle size off at q=" + std::to_string(ctx.q()));
          break;
        }
        if (!(fast == circle_points(ctx, center, delta, domain))) {
          bad.push_back("circle mismatch vs full scan at q=" + std::to_string(ctx.q()));
          break;
        }
      }
    }
  }

  detail = bad.empty() ? "T*, pinned distances, Q, and " + std::to_string(circles) +
                             " circle sizes all exact"
                       : bad.front();
  return bad.empty();
}

// --- 3: counting identities hold exactly -------------------------------------

bool criterion_identities(std::string& detail) {
  SplitMix64 rng(0xACCE5503);
  std::uint64_t instances = 0, violations = 0;

  for (int round = 0; round < 72; ++round) {
    for (const FieldSpec& fs : kSweepFields) {
      const auto ctx = make_field(fs.p, fs.e);
      const std::uint64_t plane = ctx.q() * ctx.q();
      const std::uint64_t ne = 2 + rng.bounded(std::min<std::uint64_t>(28, plane - 1));
      const std::uint64_t nf = 2 + rng.bounded(std::min<std::uint64_t>(28, plane - 1));
      const PointSet E = random_set(ctx, ne, rng.next());
      const PointSet F = random_set(ctx, nf, rng.next());
      ++instances;

      // Histogram squares against a direct triple scan.
      std::uint64_t square_sum = 0;
      for (const PlanePoint x : F.points()) {
        const SphereHistogram hist = sphere_histogram(x, E);
        for (const auto& [delta, count] : hist.entries) square_sum += count * count;
      }
      std::uint64_t equal_pairs = 0, zero_leg = 0, nonzero_pairs = 0;
      for (const PlanePoint x : F.points()) {
        for (const PlanePoint b : E.points()) {
          if (distance(ctx, x, b).rank != 0) ++nonzero_pairs;
          for (const PlanePoint c : E.points()) {
            if (distance(ctx, x, b) == distance(ctx, x, c)) {
              ++equal_pairs;
              if (distance(ctx, b, c).rank == 0) ++zero_leg;
            }
          }
        }
      }
      if (square_sum != equal_pairs) ++violations;
      if (isosceles_triples(F, E).value != equal_pairs - zero_leg) ++violations;

      // Pinned circles cover each nonzero pair exactly once.
      std::uint64_t circle_cover = 0;
      for (const PlanePoint x : F.points())
        for (const FieldElem delta : pinned_nonzero_distances(x, E))
          circle_cover += circle_points(ctx, x, delta, E).size();
      if (circle_cover != nonzero_pairs) ++violations;
    }
  }
  detail = std::to_string(instances) + " instances, " + std::to_string(violations) +
           " identity violations";
  return violations == 0 && instances >= 500;
}

// --- 4: the unconditional incidence bound never fails ------------------------

bool criterion_incidence_sweep(std::string& detail) {
  SplitMix64 rng(0xACCE5504);
  std::uint64_t instances = 0, violations = 0;
  for (const std::uint32_t p : {5u, 7u, 11u, 13u, 17u}) {
    const auto ctx = make_field(p);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t plane = ctx.q() * ctx.q();
      const std::uint64_t nf = 1 + rng.bounded(std::min<std::uint64_t>(40, plane));
      const PointSet F = random_set(ctx, nf, rng.next());
      const PointSet E =
          random_set(ctx, 2 + rng.bounded(std::min<std::uint64_t>(28, plane - 1)), rng.next());
      const AuditReport report =
          audit_incidence_bound(F, mixed_lines(ctx, E, rng, rng.bounded(12)));
      ++instances;
      if (!report.holds) ++violations;
    }
  }
  detail = std::to_string(instances) + " audits, " + std::to_string(violations) + " violations";
  return instances >= 1000 && violations == 0;
}

// --- 5: conditional audits record premises; stub drives the exit path --------

int cli_exit(const std::string& args) {
  const std::string cmd = std::string("\"") + FFGEOM_CLI_PATH + "\" " + args;
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

bool criterion_conditional_audits(std::string& detail) {
  SplitMix64 rng(0xACCE5505);
  std::uint64_t reports = 0, premise_errors = 0, in_range_violations = 0;

  for (const std::uint32_t p : {5u, 7u, 11u, 13u, 17u}) {
    const auto ctx = make_field(p);
    for (int i = 0; i < 60; ++i) {
      const std::uint64_t plane = ctx.q() * ctx.q();
      const std::uint64_t n = 1 + rng.bounded(std::min<std::uint64_t>(40, plane));
      const PointSet E = random_set(ctx, n, rng.next());

      const AuditReport triple = audit_triple_bound(E);
      const bool triple_premise = BigInt(625) * big_pow(BigInt(p), 5) <= big_pow(BigInt(n), 4) &&
                                  big_pow(BigInt(n), 3) <= big_pow(BigInt(p), 4);
      if (triple.premise_in_range != triple_premise) ++premise_errors;
      if (triple.premise_in_range && !triple.holds) ++in_range_violations;

      const AuditReport bis = audit_bisector_bound(E);
      if (!bis.premise_in_range) ++premise_errors;  // unconditional in prime fields
      if (!bis.holds) ++in_range_violations;

      const AuditReport kc = audit_K_constant(E);
      if (kc.premise_in_range != (big_pow(BigInt(n), 3) <= big_pow(BigInt(p), 4)))
        ++premise_errors;
      if (kc.premise_in_range && !kc.holds) ++in_range_violations;

      reports += 3;
    }
  }

  // The medium window [5*2^16 p^(5/4), p^(4/3)] is empty for every enumerable
  // characteristic; it first closes exactly at p* = (5*2^16)^12.
  bool boundary_ok = true;
  const BigInt scale = BigInt(625) << 64;
  const BigInt pstar = big_pow(BigInt(5) << 16, 12);
  const BigInt n_star = iroot(big_pow(pstar, 4), 3);
  boundary_ok &= big_pow(n_star, 3) == big_pow(pstar, 4);
  boundary_ok &= big_pow(n_star, 4) == scale * big_pow(pstar, 5);
  const BigInt n_below = iroot(big_pow(pstar - 1, 4), 3);
  boundary_ok &= big_pow(n_below, 4) < scale * big_pow(pstar - 1, 5);
  for (const std::uint64_t p : {3ull, 17ull, 65521ull, 1048573ull}) {
    const BigInt n_max = iroot(big_pow(BigInt(p), 4), 3);
    boundary_ok &= big_pow(n_max, 4) < scale * big_pow(BigInt(p), 5);
  }

  const int clean = cli_exit(
      "audit --p 7 --check incidence_bound --E random:10 --instances 3 "
      "--out /tmp/ffgeom_acceptance_clean.csv");
  const int planted = cli_exit(
      "audit --p 7 --check planted_violation --E random:4 "
      "--out /tmp/ffgeom_acceptance_planted.csv");
  const bool exits_ok = clean == 0 && planted == 2;

  detail = std::to_string(reports) + " reports, " + std::to_string(premise_errors) +
           " premise errors, " + std::to_string(in_range_violations) +
           " in-range violations; boundary " + (boundary_ok ? "exact" : "WRONG") +
           "; exit codes " + std::to_string(clean) + "/" + std::to_string(planted);
  return premise_errors == 0 && in_range_violations == 0 && boundary_ok && exits_ok;
}

// --- 6: certificates verify and never overstate the exact count --------------

bool criterion_certificates(std::string& detail) {
  SplitMix64 rng(0xACCE5506);
  const std::vector<std::string> trees = {
      "vertices=2 edges=1-2 pin=1",          "vertices=3 edges=1-2,2-3 pin=1",
      "vertices=3 edges=1-2,1-3 pin=1",      "vertices=4 edges=1-2,2-3,3-4 pin=2",
      "vertices=4 edges=1-2,1-3,1-4 pin=1",  "vertices=4 edges=1-2,2-3,3-4 pin=1",
  };
  std::uint64_t instances = 0, check_failures = 0, bound_failures = 0;
  std::uint64_t mutations = 0, accepted_mutations = 0;

  for (int i = 0; instances < 216; ++i) {
    const FieldSpec fs = kSweepFields[i % kSweepFields.size()];
    const auto ctx = make_field(fs.p, fs.e);
    const std::uint64_t plane = ctx.q() * ctx.q();
    const std::uint64_t n = std::min<std::uint64_t>(8 + rng.bounded(18), plane - 1);
    const PointSet E = random_set(ctx, n, rng.next());
    const PointSet F = random_set(ctx, n, rng.next());
    const TreeSpec tree = parse_tree_spec(trees[i % trees.size()]);

    CertifyParams params;
    const std::vector<Regime> regimes =
        fs.e == 1 ? std::vector<Regime>{Regime::medium_prime, Regime::large_prime,
                                        Regime::arbitrary, Regime::auto_prime}
                  : std::vector<Regime>{Regime::large_q, Regime::arbitrary};
    params.regime = regimes[i % regimes.size()];
    params.split_strategy = (i % 2 == 0) ? SplitStrategy::alternating : SplitStrategy::halves;

    const Certificate cert = certify_tree(E, F, tree, params);
    ++instances;
    if (!cert.sound || !check_certificate(cert, E, F, tree)) {
      ++check_failures;
      continue;
    }
    for (const PlanePoint pin : cert.pins) {
      const PointSet pool = cert.trimmed ? F.first_n(cert.root.f_pts.size()) : F;
      if (count_distinct_pinned_trees(ctx, tree, pin, pool) < cert.per_pin_bound) {
        ++bound_failures;
        break;
      }
    }

    if (i % 5 == 0) {
      // Inflate the claimed bound through the JSON round trip.
      auto doc = nlohmann::json::parse(certificate_to_json(cert));
      doc["bounds"]["per_pin_bound"] = std::to_string(cert.per_pin_bound + 1);
      ++mutations;
      if (check_certificate(certificate_from_json(doc.dump()), E, F, tree))
        ++accepted_mutations;

      // Overlap the recorded sub-pools (or corrupt the pin list at a leaf).
      Certificate bad = cert;
      ++mutations;
      if (!bad.root.f1_pts.empty() && !bad.root.f2_pts.empty())
        bad.root.f1_pts = bad.root.f2_pts;
      else
        bad.pins.assign(1, PlanePoint{ctx.from_int(1), ctx.from_int(1)});
      if (check_certificate(bad, E, F, tree)) {
        // The corrupted pin may coincide with the genuine extraction; only
        // count acceptances that changed the certificate.
        if (!(certificate_to_json(bad) == certificate_to_json(cert))) ++accepted_mutations;
      }
    }
  }

  detail = std::to_string(instances) + " certificates, " + std::to_string(check_failures) +
           " check failures, " + std::to_string(bound_failures) + " bound overstatements, " +
           std::to_string(accepted_mutations) + "/" + std::to_string(mutations) +
           " mutations accepted";
  return instances >= 200 && check_failures == 0 && bound_failures == 0 &&
         accepted_mutations == 0;
}

// --- 7: single-edge certification equals the popular-pin filter --------------

bool criterion_structural_echo(std::string& detail) {
  SplitMix64 rng(0xACCE5507);
  const TreeSpec edge = parse_tree_spec("vertices=2 edges=1-2 pin=1");
  std::uint64_t checks = 0, mismatches = 0;
  for (const std::uint32_t p : {5u, 7u, 13u}) {
    const auto ctx = make_field(p);
    for (int i = 0; i < 10; ++i) {
      const PointSet E = random_set(ctx, 4 + rng.bounded(17), rng.next());
      for (int t = 0; t <= 5; ++t) {
        CertifyParams params;
        params.threshold_rule = "fixed:" + std::to_string(t);
        const Certificate cert = certify_tree(E, E, edge, params);
        ++checks;
        if (!(PointSet(ctx, cert.pins) == popular_pins(E, E, Rational(t)))) ++mismatches;
      }
    }
  }
  detail = std::to_string(checks) + " threshold/instance pairs, " +
           std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

// --- 8: CSV reports are deterministic ----------------------------------------

bool criterion_determinism(std::string& detail) {
  ExperimentConfig config;
  config.p = 11;
  config.source_e = "random:18";
  config.source_f = "random:18";
  config.selections = {"T*", "Q", "incidence_bound", "bisector_bound"};
  config.instances = 16;
  config.seed = 7;

  setenv("FFGEOM_THREADS", "1", 1);
  const std::string serial = csv_without_elapsed(to_csv(run_experiment(config).report));
  const std::string serial_again = csv_without_elapsed(to_csv(run_experiment(config).report));
  setenv("FFGEOM_THREADS", "5", 1);
  const std::string parallel = csv_without_elapsed(to_csv(run_experiment(config).report));
  unsetenv("FFGEOM_THREADS");

  const bool pass = serial == serial_again && serial == parallel;
  detail = pass ? "byte-identical across repeat runs and worker counts 1/5"
                : "outputs diverged";
  return pass;
}

}  // namespace

int main() {
  std::string detail;

  bool pass = criterion_oracles(detail);
  verdict(1, "oracle equivalence", pass, detail);

  pass = criterion_anchors(detail);
  verdict(2, "exact anchors", pass, detail);

  pass = criterion_identities(detail);
  verdict(3, "counting identities", pass, detail);

  pass = criterion_incidence_sweep(detail);
  verdict(4, "unconditional incidence bound", pass, detail);

  pass = criterion_conditional_audits(detail);
  verdict(5, "conditional audits and exit paths", pass, detail);

  pass = criterion_certificates(detail);
  verdict(6, "certificate soundness", pass, detail);

  pass = criterion_structural_echo(detail);
  verdict(7, "structural extraction echo", pass, detail);

  pass = criterion_determinism(detail);
  verdict(8, "report determinism", pass, detail);

  if (failures == 0)
    std::printf("acceptance: all 8 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
