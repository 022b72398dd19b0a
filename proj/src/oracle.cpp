#include "ffgeom/oracle.hpp"

#include <set>

namespace ffgeom::oracle {

std::uint64_t isosceles_triples(const PointSet& F, const PointSet& E, TripleMode mode) {
  const FieldCtx& ctx = E.ctx();
  std::uint64_t total = 0;
  for (const auto& a : F.points())
    for (const auto& b : E.points())
      for (const auto& c : E.points()) {
        if (distance(ctx, b, c).rank == 0) continue;
        const FieldElem ab = distance(ctx, a, b);
        if (ab != distance(ctx, a, c)) continue;
        if (mode == TripleMode::strict && ab.rank == 0) continue;
        ++total;
      }
  return total;
}

std::uint64_t bisector_energy(const PointSet& E, EnergyVariant variant) {
  const FieldCtx& ctx = E.ctx();
  const auto& pts = E.points();
  std::uint64_t total = 0;
  for (const auto& a : pts)
    for (const auto& b : pts) {
      if (a == b || distance(ctx, a, b).rank == 0) continue;
      const LineF line = bisector(ctx, a, b);
      for (const auto& c : pts)
        for (const auto& d : pts) {
          if (c == d) continue;
          if (variant == EnergyVariant::symmetric && distance(ctx, c, d).rank == 0) continue;
          if (bisector(ctx, c, d) == line) ++total;
        }
    }
  return total;
}

std::uint64_t incidences(const PointSet& F, const LineMultiset& L) {
  const FieldCtx& ctx = F.ctx();
  std::uint64_t total = 0;
  for (const auto& pt : F.points())
    for (const auto& [line, mult] : L.entries())
      if (on_line(ctx, line, pt)) total += mult;
  return total;
}

std::uint64_t count_distinct_pinned_trees(const FieldCtx& ctx, const TreeSpec& tree, PlanePoint x,
                                          const PointSet& pool, CountMode mode) {
  const auto pts = pool.without(x).points();
  const std::uint32_t k = tree.k();
  if (pts.size() < k) return 0;

  std::vector<std::uint32_t> non_pin;
  for (std::uint32_t v = 1; v <= tree.num_vertices; ++v)
    if (v != tree.pin) non_pin.push_back(v);

  std::set<std::vector<std::uint32_t>> vectors;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    bool injective = true;
    for (std::size_t i = 0; injective && i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (idx[i] == idx[j]) {
          injective = false;
          break;
        }
    if (injective) {
      Embedding emb(tree.num_vertices);
      emb.assign(tree.pin, x);
      for (std::size_t i = 0; i < k; ++i) emb.assign(non_pin[i], pts[idx[i]]);
      const EdgeLengthVector vec = edge_length_vector(ctx, tree, emb);
      bool has_zero = false;
      for (const FieldElem entry : vec.entries) has_zero = has_zero || entry.rank == 0;
      if (mode == CountMode::all || !has_zero) {
        std::vector<std::uint32_t> ranks;
        for (const FieldElem entry : vec.entries) ranks.push_back(entry.rank);
        vectors.insert(std::move(ranks));
      }
    }
    // Odometer step.
    std::size_t at = 0;
    while (at < k && ++idx[at] == pts.size()) idx[at++] = 0;
    if (at == k) break;
  }
  return vectors.size();
}

}  // namespace ffgeom::oracle
