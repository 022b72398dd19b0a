#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffgeom/params.hpp"
#include "ffgeom/plane.hpp"

namespace ffgeom {

// Tree on vertex labels 1..num_vertices with a pinned vertex.  Edges are kept
// canonical: smaller label first within an edge, edges sorted by (first,
// second).  Edge-length vectors are always read in this order.
struct TreeSpec {
  std::uint32_t num_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::uint32_t pin = 1;

  std::uint32_t k() const { return static_cast<std::uint32_t>(edges.size()); }
  std::uint32_t degree(std::uint32_t vertex) const;
  std::vector<std::uint32_t> neighbors(std::uint32_t vertex) const;

  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

// Validates tree-ness (connected, acyclic, labels in range) and canonicalizes.
TreeSpec make_tree_spec(std::uint32_t num_vertices,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                        std::uint32_t pin);

// Grammar: vertices=<n> edges=<i>-<j>[,<i>-<j>]* pin=<v>
TreeSpec parse_tree_spec(const std::string& text);
std::string tree_spec_to_string(const TreeSpec& tree);

struct EdgeLengthVector {
  std::vector<FieldElem> entries;

  friend auto operator<=>(const EdgeLengthVector&, const EdgeLengthVector&) = default;
};

// Injective assignment of vertex labels to plane points.
class Embedding {
 public:
  explicit Embedding(std::uint32_t num_vertices);

  void assign(std::uint32_t vertex, PlanePoint pt);
  bool assigned(std::uint32_t vertex) const;
  bool complete() const;
  PlanePoint at(std::uint32_t vertex) const;
  std::uint32_t num_vertices() const { return static_cast<std::uint32_t>(slots_.size()); }

 private:
  std::vector<std::pair<PlanePoint, bool>> slots_;
};

// Distances of the embedded edges, in the tree's canonical edge order.
EdgeLengthVector edge_length_vector(const FieldCtx& ctx, const TreeSpec& tree,
                                    const Embedding& emb);

// Tree minus its pinned leaf (requires degree(pin) = 1 and k >= 2), vertices
// relabeled 1..n-1 preserving label order, re-pinned at the removed vertex's
// neighbor.
TreeSpec remove_pin_leaf(const TreeSpec& tree);

// Partition at a pin of degree >= 2: first the branch through the smallest
// neighbor, then the remainder; the pin stays in (and pins) both parts.
std::pair<TreeSpec, TreeSpec> split_tree_at_pin(const TreeSpec& tree);

enum class CountMode { all, nonzero };

// Number of distinct edge-length vectors over injective embeddings with
// pin -> x and the remaining vertices drawn from pool (x is removed from the
// pool first).  Mode nonzero discards vectors containing a zero entry.
// Refuses to start when |pool|^k exceeds the budget.
std::uint64_t count_distinct_pinned_trees(const FieldCtx& ctx, const TreeSpec& tree, PlanePoint x,
                                          const PointSet& pool, CountMode mode = CountMode::nonzero,
                                          std::uint64_t budget = 10'000'000);

// Recursion trace of the lower bound: every pool split and per-level value.
struct BoundNode {
  enum class Case { base, deg1, split };

  Case tag = Case::base;
  TreeSpec tree;
  PlanePoint pin_point;
  std::vector<PlanePoint> pool;
  // deg1: {P1 (recursion pool), P2 (distance pool)}; split: {Q1, Q2}.
  std::vector<std::vector<PlanePoint>> sub_pools;
  // deg1: one (distance, lexicographically first witness) pair per achieved distance.
  std::vector<std::pair<FieldElem, PlanePoint>> chosen;
  std::uint64_t value = 0;
  std::vector<BoundNode> children;
};

struct LowerBound {
  std::uint64_t value = 0;
  BoundNode trace;
};

// Sound lower bound on count_distinct_pinned_trees(..., nonzero):
//   k = 1        ->  |pinned nonzero distances of x into the pool|
//   deg(pin) = 1 ->  split pool into P1, P2; |D*_x(P2)| times the minimum,
//                    over the per-distance witnesses y in P2, of the bound
//                    for the tree minus the pin, pinned at y over P1
//   deg(pin) > 1 ->  split the tree at the pin and the pool into Q1, Q2;
//                    product of the two sub-bounds
// Distinct sub-vectors merge into distinct full vectors because the sub-pools
// are disjoint and the new coordinate separates distance classes.
LowerBound pinned_tree_lower_bound(const FieldCtx& ctx, const TreeSpec& tree, PlanePoint x,
                                   const PointSet& pool, const CertifyParams& params);

}  // namespace ffgeom
