#pragma once

#include <cstdint>

#include "ffgeom/plane.hpp"
#include "ffgeom/stats.hpp"
#include "ffgeom/trees.hpp"

// Brute-force reference implementations.  Deliberately naive — plain nested
// loops over the definitions — so the fast paths are checked against code
// that shares nothing with them beyond the definitional primitives.
namespace ffgeom::oracle {

std::uint64_t isosceles_triples(const PointSet& F, const PointSet& E,
                                TripleMode mode = TripleMode::paper);

std::uint64_t bisector_energy(const PointSet& E, EnergyVariant variant = EnergyVariant::paper);

std::uint64_t incidences(const PointSet& F, const LineMultiset& L);

// Odometer over all injective label-order assignments; vectors built through
// the public edge_length_vector and collected in a plain set.
std::uint64_t count_distinct_pinned_trees(const FieldCtx& ctx, const TreeSpec& tree, PlanePoint x,
                                          const PointSet& pool,
                                          CountMode mode = CountMode::nonzero);

}  // namespace ffgeom::oracle
