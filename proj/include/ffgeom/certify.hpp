#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffgeom/params.hpp"
#include "ffgeom/plane.hpp"
#include "ffgeom/trees.hpp"

namespace ffgeom {

// Exact pin threshold.  `rational` passes when count >= value; the
// two-thirds-root form stands for n^(2/3) / scale_div and passes when
// (scale_div * count)^3 >= n^2, decided entirely in integer arithmetic.
struct Threshold {
  enum class Kind { rational, two_thirds_root };

  Kind kind = Kind::rational;
  Rational value;  // rational form
  Rational scale_div = 1;  // two_thirds_root: the divisor (e.g. 8(K+1))
  std::uint64_t n = 0;     // two_thirds_root: the size under the 2/3 power

  bool met_by(std::uint64_t count) const;
  std::string text() const;

  static Threshold rational(Rational value);
  static Threshold two_thirds_root(Rational scale_div, std::uint64_t n);

  friend bool operator==(const Threshold&, const Threshold&) = default;
};

// {x in pins : |pinned nonzero distances of x into measured| >= threshold}.
PointSet popular_pins(const PointSet& measured, const PointSet& pins, const Rational& threshold);
PointSet popular_pins(const PointSet& measured, const PointSet& pins, const Threshold& threshold);

// floor(|E| / block_size) pairwise-disjoint blocks of exactly block_size
// points, in lexicographic order; the remainder is left out.
std::vector<PointSet> greedy_blocks(const PointSet& E, std::uint64_t block_size);

// One node of the extraction recursion.  Every referenced set is stored by
// value so a checker can re-derive each step without re-running the recursion.
struct CertNode {
  enum class Case { base, deg1, split };

  Case tag = Case::base;
  std::string tree_text;                // subtree handled at this node
  std::vector<PlanePoint> e_pts;        // pin-candidate set at this node
  std::vector<PlanePoint> f_pts;        // tree-pool set at this node
  Threshold threshold;                  // base: the pin threshold applied
  std::vector<PlanePoint> extracted;    // pins surviving this node

  // deg1: halves of F, the block partition of E, and the per-block survivors.
  std::vector<PlanePoint> f1_pts, f2_pts;
  std::uint64_t s = 0;                  // block count floor(|E| / |F2'|)
  std::vector<std::vector<PlanePoint>> blocks;
  std::vector<std::vector<PlanePoint>> block_pins;
  Threshold block_threshold;            // threshold applied to each block

  // split: halves of E and the per-branch F2' selections.
  std::vector<PlanePoint> e1_pts, e2_pts;
  std::vector<std::vector<PlanePoint>> chosen_f2;

  bool premise_ok = true;               // per-application extraction premise
  std::vector<std::string> notes;       // premise details, inheritance checks
  std::vector<CertNode> children;

  friend bool operator==(const CertNode&, const CertNode&) = default;
};

struct Certificate {
  Regime regime = Regime::arbitrary;            // regime actually executed
  Regime requested_regime = Regime::arbitrary;  // as configured
  CertifyParams params;
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::uint64_t n_e = 0;
  std::uint64_t n_f = 0;
  TreeSpec tree;
  std::vector<PlanePoint> pins;         // extracted E'
  std::uint64_t per_pin_bound = 0;      // min over pins of the sound bound
  CertNode root;
  bool sound = true;
  bool hypothesis_in_range = false;
  bool trimmed = false;                 // gap dispatch cut E, F down first
  std::vector<std::string> notes;
};

// Runs the extraction argument mechanically and returns the full trace.
// The certificate is produced even when the size hypotheses fail (they always
// do at feasible scales); hypothesis_in_range records the verdict.
Certificate certify_tree(const PointSet& E, const PointSet& F, const TreeSpec& tree,
                         const CertifyParams& params);

// Structural walk + per-node threshold recomputation + per-pin comparison
// against the exact tree count (where the enumeration budget allows).
bool check_certificate(const Certificate& cert, const PointSet& E, const PointSet& F,
                       const TreeSpec& tree);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

struct AuditReport {
  std::string inequality;
  std::uint64_t lhs = 0;
  std::string rhs;      // decimal display of the upper enclosure
  std::string rhs_lo;   // guaranteed lower enclosure
  std::string rhs_hi;   // guaranteed upper enclosure
  bool holds = false;
  bool borderline = false;        // |lhs - rhs| within rhs * 1e-9
  bool premise_in_range = false;
  std::optional<std::string> witness;  // present iff holds is false
  std::vector<std::string> notes;
};

// T*(E) against n^3/p + 5 p^(2/3) n^(5/3) + 5 p^(1/4) n^2 (prime fields).
AuditReport audit_triple_bound(const PointSet& E);

// Bisector energy against 4 n^4 / p^2 + 10 p n^2, decided in exact rationals.
AuditReport audit_bisector_bound(const PointSet& E);

// Incidences against |F||L|/p + sqrt(p |F| sum m^2), decided by squaring.
AuditReport audit_incidence_bound(const PointSet& F, const LineMultiset& L);

// Minimal K' with T*(E) = K' n^(7/3); holds iff K' <= K, decided by cubing.
// The characteristic restriction |E|^3 <= char^4 lands in premise_in_range;
// enforce_restriction turns a failed premise into an error instead.
AuditReport audit_K_constant(const PointSet& E, const Rational& K = 4,
                             bool enforce_restriction = false);

// Max isotropic-line count of E union F against
// M = (1/4) (16K)^-(k-1) floor(|F|/8)^((2/3)^(k-1)), plus the half-size
// inheritance inequalities, all decided by integer power comparisons.
AuditReport audit_M_condition(const PointSet& E, const PointSet& F, std::uint32_t k,
                              const Rational& K = 4);

}  // namespace ffgeom
