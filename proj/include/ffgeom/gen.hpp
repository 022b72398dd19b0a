#pragma once

#include <cstdint>
#include <string>

#include "ffgeom/plane.hpp"

namespace ffgeom {

enum class GenKind { random, grid, line, isotropic_line, circle_union, product };

// Seed-deterministic point-set family.  `size` is the point count for
// random/line/isotropic_line, the side for grid, the radius count for
// circle_union, and the x-coordinate count for product (size2 = y count).
struct GenSpec {
  GenKind kind = GenKind::random;
  std::uint64_t size = 0;
  std::uint64_t size2 = 0;
  std::uint64_t seed = 0;
};

// Compact form "<kind>:<size>" ("product:<sx>x<sy>"), e.g. "random:40".
GenSpec parse_gen_spec(const std::string& text, std::uint64_t seed);
std::string gen_kind_name(GenKind kind);

PointSet generate(const FieldCtx& ctx, const GenSpec& spec);

}  // namespace ffgeom
