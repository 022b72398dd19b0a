#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "ffgeom/field.hpp"

namespace ffgeom {

struct PlanePoint {
  FieldElem x;
  FieldElem y;

  friend constexpr auto operator<=>(PlanePoint, PlanePoint) = default;
};

// Line {(X, Y) : a X + b Y = c} with (a, b) != (0, 0), scaled so the first
// nonzero coefficient among (a, b) is 1.  Canonical form makes line equality
// a plain field-by-field comparison.
struct LineF {
  FieldElem a;
  FieldElem b;
  FieldElem c;
  bool isotropic = false;  // a^2 + b^2 = 0, i.e. direction (b, -a) has zero norm

  friend constexpr auto operator<=>(const LineF&, const LineF&) = default;
};

// Deduplicated point set over a fixed context, kept in lexicographic order so
// iteration, splits, and serialization are deterministic.
class PointSet {
 public:
  explicit PointSet(FieldCtx ctx) : ctx_(std::move(ctx)) {}
  PointSet(FieldCtx ctx, std::vector<PlanePoint> pts);

  static PointSet full_plane(const FieldCtx& ctx);

  const FieldCtx& ctx() const { return ctx_; }
  const std::vector<PlanePoint>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }

  bool contains(PlanePoint pt) const;
  PointSet without(PlanePoint pt) const;
  PointSet with(PlanePoint pt) const;
  // First n points in lexicographic order; n may not exceed the size.
  PointSet first_n(std::size_t n) const;
  // Even-indexed points left, odd-indexed right: disjoint halves of sizes
  // ceil(n/2) and floor(n/2).
  std::pair<PointSet, PointSet> split_alternating() const;
  // Left half = first floor(n/2) points, right half = next floor(n/2); at odd
  // sizes the lexicographically last point is dropped so both halves match.
  std::pair<PointSet, PointSet> split_halves() const;
  PointSet unite(const PointSet& other) const;
  bool disjoint_from(const PointSet& other) const;
  bool subset_of(const PointSet& other) const;

  friend bool operator==(const PointSet& lhs, const PointSet& rhs) {
    return lhs.pts_ == rhs.pts_;
  }

 private:
  FieldCtx ctx_;
  std::vector<PlanePoint> pts_;
};

// Multiset of canonical lines; deterministic (ordered) iteration.
class LineMultiset {
 public:
  void add(const LineF& line, std::uint64_t multiplicity = 1);
  const std::map<LineF, std::uint64_t>& entries() const { return entries_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t multiplicity(const LineF& line) const;

 private:
  std::map<LineF, std::uint64_t> entries_;
  std::uint64_t total_ = 0;
};

// ||u - v|| = (u.x - v.x)^2 + (u.y - v.y)^2, an element of the field.
FieldElem distance(const FieldCtx& ctx, PlanePoint u, PlanePoint v);

// Canonicalizes a X + b Y = c; (a, b) = (0, 0) is rejected.
LineF make_line(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c);
LineF line_through(const FieldCtx& ctx, PlanePoint u, PlanePoint v);  // u != v
bool on_line(const FieldCtx& ctx, const LineF& line, PlanePoint pt);

// {y in domain : ||center - y|| = delta}.
PointSet circle_points(const FieldCtx& ctx, PlanePoint center, FieldElem delta,
                       const PointSet& domain);
// Full-plane circle via square roots per x-coordinate: O(q) points touched,
// no q^2 scan.
PointSet full_circle_points(const FieldCtx& ctx, PlanePoint center, FieldElem delta);

// Directions (1, i) with 1 + i^2 = 0; empty iff -1 is a non-square.
std::vector<PlanePoint> isotropic_directions(const FieldCtx& ctx);

// Max over all isotropic lines of |E intersect line|; 0 when none exist.
std::uint64_t max_isotropic_line_count(const PointSet& E);

// Perpendicular bisector {z : ||z - a|| = ||z - b||} in canonical form,
// i.e. 2 (b - a) . z = ||b||^2 - ||a||^2.
LineF bisector(const FieldCtx& ctx, PlanePoint a, PlanePoint b);

// Sum over points of F and lines of L (with multiplicity) of membership.
// Walks the q + 1 canonical lines through each point against a hash of L.
std::uint64_t incidences(const PointSet& F, const LineMultiset& L);

// Text format: header "p=<p> e=<e>", then one "x,y" per line; coordinates are
// ';'-joined base-p coefficient lists when e > 1, plain integers when e = 1.
void write_point_set(std::ostream& out, const PointSet& set);
PointSet read_point_set(std::istream& in);

}  // namespace ffgeom

template <>
struct std::hash<ffgeom::PlanePoint> {
  std::size_t operator()(ffgeom::PlanePoint pt) const noexcept {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(pt.x.rank) << 32 | pt.y.rank);
  }
};

template <>
struct std::hash<ffgeom::LineF> {
  std::size_t operator()(const ffgeom::LineF& line) const noexcept {
    const std::uint64_t lo = static_cast<std::uint64_t>(line.a.rank) << 32 | line.b.rank;
    return std::hash<std::uint64_t>{}(lo * 0x9E3779B97F4A7C15ull ^ line.c.rank);
  }
};
