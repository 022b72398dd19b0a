#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffgeom/plane.hpp"

namespace ffgeom {

// Distance histogram seen from one pin: entries hold only achieved distances,
// sorted by rank, each with count >= 1; total is the size of the measured set.
struct SphereHistogram {
  PlanePoint pin;
  std::vector<std::pair<FieldElem, std::uint64_t>> entries;
  std::uint64_t total = 0;

  std::uint64_t count(FieldElem delta) const;
};

enum class TripleMode { paper, strict };

struct TripleCount {
  std::uint64_t value = 0;
  TripleMode mode = TripleMode::paper;
};

enum class EnergyVariant { paper, symmetric };

// {||x - y|| : x, y in E}, sorted by rank.  Nonempty E always contains 0.
std::vector<FieldElem> distance_set(const PointSet& E);

// {||x - y|| : y in E, ||x - y|| != 0}, sorted by rank.  x need not lie in E.
std::vector<FieldElem> pinned_nonzero_distances(PlanePoint x, const PointSet& E);

// O(|E|) histogram of distances from x into E.
SphereHistogram sphere_histogram(PlanePoint x, const PointSet& E);

// Triples (a, b, c) in F x E x E with ||a-b|| = ||a-c|| and ||b-c|| != 0.
// Mode `strict` additionally requires the shared distance to be nonzero.
// Cost O(|F| |E|) plus the isotropic-line correction; never cubic.
TripleCount isosceles_triples(const PointSet& F, const PointSet& E,
                              TripleMode mode = TripleMode::paper);

// Quadruples (a, b, c, d) in E^4 with a != b, c != d, equal bisector lines,
// and ||a-b|| != 0; variant `symmetric` also requires ||c-d|| != 0.
std::uint64_t bisector_energy(const PointSet& E, EnergyVariant variant = EnergyVariant::paper);

}  // namespace ffgeom
