#include "ffgeom/stats.hpp"

#include <algorithm>
#include <unordered_map>

namespace ffgeom {
namespace {

constexpr std::uint64_t kDenseLimit = 4096;

// Shared histogram core: dense array by rank at small q, hash map above.
std::vector<std::pair<FieldElem, std::uint64_t>> histogram_entries(const FieldCtx& ctx,
                                                                   PlanePoint x,
                                                                   const PointSet& E) {
  std::vector<std::pair<FieldElem, std::uint64_t>> entries;
  if (ctx.q() <= kDenseLimit) {
    std::vector<std::uint64_t> dense(ctx.q(), 0);
    for (const auto& y : E.points()) ++dense[distance(ctx, x, y).rank];
    for (std::uint64_t r = 0; r < ctx.q(); ++r)
      if (dense[r]) entries.emplace_back(FieldElem{static_cast<std::uint32_t>(r)}, dense[r]);
  } else {
    std::unordered_map<std::uint32_t, std::uint64_t> sparse;
    for (const auto& y : E.points()) ++sparse[distance(ctx, x, y).rank];
    entries.reserve(sparse.size());
    for (const auto& [rank, count] : sparse) entries.emplace_back(FieldElem{rank}, count);
    std::sort(entries.begin(), entries.end());
  }
  return entries;
}

// Per isotropic line: (|E on line|, |F on line|), keyed by direction and
// intercept.  Distinct points at distance zero always share exactly one such
// line, and every point of that line is equidistant from the pair.
std::vector<std::pair<std::uint64_t, std::uint64_t>> isotropic_line_profile(
    const FieldCtx& ctx, const PointSet& E, const PointSet& F) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> profile;
  for (const PlanePoint dir : isotropic_directions(ctx)) {
    std::unordered_map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> buckets;
    for (const auto& pt : E.points())
      ++buckets[ctx.sub(pt.y, ctx.mul(dir.y, pt.x)).rank].first;
    for (const auto& pt : F.points())
      ++buckets[ctx.sub(pt.y, ctx.mul(dir.y, pt.x)).rank].second;
    for (const auto& [key, counts] : buckets) profile.push_back(counts);
  }
  return profile;
}

}  // namespace

std::uint64_t SphereHistogram::count(FieldElem delta) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), delta,
                                   [](const auto& entry, FieldElem d) { return entry.first < d; });
  return it != entries.end() && it->first == delta ? it->second : 0;
}

std::vector<FieldElem> distance_set(const PointSet& E) {
  const FieldCtx& ctx = E.ctx();
  std::vector<bool> seen(ctx.q(), false);
  const auto& pts = E.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) seen[distance(ctx, pts[i], pts[j]).rank] = true;
  std::vector<FieldElem> out;
  for (std::uint64_t r = 0; r < ctx.q(); ++r)
    if (seen[r]) out.push_back({static_cast<std::uint32_t>(r)});
  return out;
}

std::vector<FieldElem> pinned_nonzero_distances(PlanePoint x, const PointSet& E) {
  const FieldCtx& ctx = E.ctx();
  std::vector<bool> seen(ctx.q(), false);
  for (const auto& y : E.points()) seen[distance(ctx, x, y).rank] = true;
  std::vector<FieldElem> out;
  for (std::uint64_t r = 1; r < ctx.q(); ++r)
    if (seen[r]) out.push_back({static_cast<std::uint32_t>(r)});
  return out;
}

SphereHistogram sphere_histogram(PlanePoint x, const PointSet& E) {
  SphereHistogram hist;
  hist.pin = x;
  hist.entries = histogram_entries(E.ctx(), x, E);
  hist.total = E.size();
  return hist;
}

TripleCount isosceles_triples(const PointSet& F, const PointSet& E, TripleMode mode) {
  const FieldCtx& ctx = E.ctx();
  std::uint64_t square_sum = 0;      // ordered (b, c) sharing the admitted distances, per apex
  std::uint64_t nonzero_degree = 0;  // apexes' counts of points at nonzero distance
  for (const auto& a : F.points()) {
    const SphereHistogram hist = sphere_histogram(a, E);
    for (const auto& [delta, count] : hist.entries) {
      if (mode == TripleMode::strict && delta.rank == 0) continue;
      square_sum += count * count;
    }
    nonzero_degree += E.size() - hist.count(FieldElem{0});
  }

  TripleCount out;
  out.mode = mode;
  if (mode == TripleMode::strict) {
    // Pairs b = c are the only zero-distance pairs sharing a nonzero apex
    // distance; distinct points at distance zero force the apex onto their
    // isotropic line, where the shared distance is zero.
    out.value = square_sum - nonzero_degree;
  } else {
    // b = c contributes |F| |E|; distinct zero-distance pairs contribute the
    // apexes on their own isotropic line.
    std::uint64_t zero_pair_triples = static_cast<std::uint64_t>(F.size()) * E.size();
    for (const auto& [on_e, on_f] : isotropic_line_profile(ctx, E, F))
      zero_pair_triples += on_e * (on_e - 1) * on_f;
    out.value = square_sum - zero_pair_triples;
  }
  return out;
}

std::uint64_t bisector_energy(const PointSet& E, EnergyVariant variant) {
  const FieldCtx& ctx = E.ctx();
  // Per bisector line: ordered pair counts at nonzero / zero pair distance.
  std::unordered_map<LineF, std::pair<std::uint64_t, std::uint64_t>> buckets;
  const auto& pts = E.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      auto& slot = buckets[bisector(ctx, pts[i], pts[j])];
      if (distance(ctx, pts[i], pts[j]).rank != 0)
        ++slot.first;
      else
        ++slot.second;
    }
  std::uint64_t total = 0;
  for (const auto& [line, counts] : buckets) {
    const auto [nonzero, zero] = counts;
    total += nonzero * (variant == EnergyVariant::paper ? nonzero + zero : nonzero);
  }
  return total;
}

}  // namespace ffgeom
