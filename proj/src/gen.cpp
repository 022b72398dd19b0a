#include "ffgeom/gen.hpp"

#include <charconv>
#include <unordered_map>

#include "ffgeom/error.hpp"
#include "ffgeom/numeric.hpp"

namespace ffgeom {
namespace {

// First n entries of a seeded permutation of [0, space): partial Fisher-Yates
// with a displacement map, so memory is O(n) even when space is q^2.
std::vector<std::uint64_t> sample_ranks(SplitMix64& rng, std::uint64_t space, std::uint64_t n) {
  std::unordered_map<std::uint64_t, std::uint64_t> displaced;
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + rng.bounded(space - i);
    const auto at = [&](std::uint64_t k) {
      const auto it = displaced.find(k);
      return it == displaced.end() ? k : it->second;
    };
    const std::uint64_t value = at(j);
    displaced[j] = at(i);
    out.push_back(value);
  }
  return out;
}

PlanePoint decode_point(const FieldCtx& ctx, std::uint64_t rank) {
  return {ctx.element(rank / ctx.q()), ctx.element(rank % ctx.q())};
}

std::uint64_t parse_size(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(errc::parse_error, "bad generator size '" + std::string(text) + "'");
  return value;
}

}  // namespace

GenSpec parse_gen_spec(const std::string& text, std::uint64_t seed) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    fail(errc::parse_error, "generator spec needs '<kind>:<size>', got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);

  GenSpec spec;
  spec.seed = seed;
  if (kind == "random")
    spec.kind = GenKind::random;
  else if (kind == "grid")
    spec.kind = GenKind::grid;
  else if (kind == "line")
    spec.kind = GenKind::line;
  else if (kind == "isotropic_line")
    spec.kind = GenKind::isotropic_line;
  else if (kind == "circle_union")
    spec.kind = GenKind::circle_union;
  else if (kind == "product")
    spec.kind = GenKind::product;
  else
    fail(errc::parse_error, "unknown generator kind '" + kind + "'");

  if (spec.kind == GenKind::product) {
    const std::size_t x = rest.find('x');
    if (x == std::string::npos)
      fail(errc::parse_error, "product generator needs '<sx>x<sy>', got '" + rest + "'");
    spec.size = parse_size(std::string_view(rest).substr(0, x));
    spec.size2 = parse_size(std::string_view(rest).substr(x + 1));
  } else {
    spec.size = parse_size(rest);
  }
  return spec;
}

std::string gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::random: return "random";
    case GenKind::grid: return "grid";
    case GenKind::line: return "line";
    case GenKind::isotropic_line: return "isotropic_line";
    case GenKind::circle_union: return "circle_union";
    case GenKind::product: return "product";
  }
  return "?";
}

PointSet generate(const FieldCtx& ctx, const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  const std::uint64_t q = ctx.q();

  switch (spec.kind) {
    case GenKind::random: {
      if (spec.size > q * q)
        fail(errc::size_exceeds_plane, "requested " + std::to_string(spec.size) +
                                           " points from a plane of " + std::to_string(q * q));
      std::vector<PlanePoint> pts;
      pts.reserve(spec.size);
      for (const std::uint64_t rank : sample_ranks(rng, q * q, spec.size))
        pts.push_back(decode_point(ctx, rank));
      return PointSet(ctx, std::move(pts));
    }
    case GenKind::grid: {
      if (spec.size > q) fail(errc::size_exceeds_plane, "grid side exceeds q");
      std::vector<PlanePoint> pts;
      for (std::uint64_t x = 0; x < spec.size; ++x)
        for (std::uint64_t y = 0; y < spec.size; ++y)
          pts.push_back({ctx.element(x), ctx.element(y)});
      return PointSet(ctx, std::move(pts));
    }
    case GenKind::line: {
      if (spec.size > q) fail(errc::size_exceeds_plane, "line holds only q points");
      // Random canonical non-isotropic line, then a sample of its parameter values.
      LineF line;
      while (true) {
        const FieldElem a = ctx.element(rng.bounded(q));
        const FieldElem b = ctx.element(rng.bounded(q));
        if (a.rank == 0 && b.rank == 0) continue;
        line = make_line(ctx, a, b, ctx.element(rng.bounded(q)));
        if (!line.isotropic) break;
      }
      std::vector<PlanePoint> pts;
      for (const std::uint64_t t : sample_ranks(rng, q, spec.size)) {
        const FieldElem param = ctx.element(t);
        if (line.a.rank != 0)  // x = c - b y, one point per y
          pts.push_back({ctx.sub(line.c, ctx.mul(line.b, param)), param});
        else  // y = c, one point per x
          pts.push_back({param, line.c});
      }
      return PointSet(ctx, std::move(pts));
    }
    case GenKind::isotropic_line: {
      const auto dirs = isotropic_directions(ctx);
      if (dirs.empty())
        fail(errc::no_isotropic_lines, "-1 is a non-square; no isotropic lines exist");
      if (spec.size > q) fail(errc::size_exceeds_plane, "line holds only q points");
      const PlanePoint dir = dirs[rng.bounded(dirs.size())];
      const FieldElem intercept = ctx.element(rng.bounded(q));
      std::vector<PlanePoint> pts;
      for (const std::uint64_t t : sample_ranks(rng, q, spec.size)) {
        const FieldElem x = ctx.element(t);
        pts.push_back({x, ctx.add(intercept, ctx.mul(dir.y, x))});
      }
      return PointSet(ctx, std::move(pts));
    }
    case GenKind::circle_union: {
      if (spec.size > q) fail(errc::size_exceeds_plane, "at most q distinct radii");
      const PlanePoint center = decode_point(ctx, rng.bounded(q * q));
      PointSet out(ctx);
      for (const std::uint64_t r : sample_ranks(rng, q, spec.size))
        out = out.unite(full_circle_points(ctx, center, ctx.element(r)));
      return out;
    }
    case GenKind::product: {
      if (spec.size > q || spec.size2 > q)
        fail(errc::size_exceeds_plane, "coordinate set exceeds q");
      const auto xs = sample_ranks(rng, q, spec.size);
      const auto ys = sample_ranks(rng, q, spec.size2);
      std::vector<PlanePoint> pts;
      for (const std::uint64_t x : xs)
        for (const std::uint64_t y : ys) pts.push_back({ctx.element(x), ctx.element(y)});
      return PointSet(ctx, std::move(pts));
    }
  }
  fail(errc::invalid_argument, "unknown generator kind");
}

}  // namespace ffgeom
