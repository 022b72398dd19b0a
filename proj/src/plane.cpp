#include "ffgeom/plane.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "ffgeom/error.hpp"

namespace ffgeom {

PointSet::PointSet(FieldCtx ctx, std::vector<PlanePoint> pts)
    : ctx_(std::move(ctx)), pts_(std::move(pts)) {
  for (const auto& pt : pts_)
    if (pt.x.rank >= ctx_.q() || pt.y.rank >= ctx_.q())
      fail(errc::invalid_argument, "point coordinate out of range for q = " +
                                       std::to_string(ctx_.q()));
  std::sort(pts_.begin(), pts_.end());
  pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

PointSet PointSet::full_plane(const FieldCtx& ctx) {
  if (ctx.q() > 2048)
    fail(errc::too_large, "full plane of q = " + std::to_string(ctx.q()) + " is out of budget");
  std::vector<PlanePoint> pts;
  pts.reserve(ctx.q() * ctx.q());
  for (std::uint64_t x = 0; x < ctx.q(); ++x)
    for (std::uint64_t y = 0; y < ctx.q(); ++y)
      pts.push_back({ctx.element(x), ctx.element(y)});
  return PointSet(ctx, std::move(pts));
}

bool PointSet::contains(PlanePoint pt) const {
  return std::binary_search(pts_.begin(), pts_.end(), pt);
}

PointSet PointSet::without(PlanePoint pt) const {
  PointSet out(ctx_);
  out.pts_.reserve(pts_.size());
  for (const auto& p : pts_)
    if (p != pt) out.pts_.push_back(p);
  return out;
}

PointSet PointSet::with(PlanePoint pt) const {
  auto pts = pts_;
  pts.push_back(pt);
  return PointSet(ctx_, std::move(pts));
}

PointSet PointSet::first_n(std::size_t n) const {
  if (n > pts_.size()) fail(errc::invalid_argument, "first_n beyond set size");
  PointSet out(ctx_);
  out.pts_.assign(pts_.begin(), pts_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

std::pair<PointSet, PointSet> PointSet::split_alternating() const {
  PointSet even(ctx_), odd(ctx_);
  for (std::size_t i = 0; i < pts_.size(); ++i)
    (i % 2 == 0 ? even : odd).pts_.push_back(pts_[i]);
  return {std::move(even), std::move(odd)};
}

std::pair<PointSet, PointSet> PointSet::split_halves() const {
  const std::size_t half = pts_.size() / 2;
  PointSet lo(ctx_), hi(ctx_);
  lo.pts_.assign(pts_.begin(), pts_.begin() + static_cast<std::ptrdiff_t>(half));
  hi.pts_.assign(pts_.begin() + static_cast<std::ptrdiff_t>(half),
                 pts_.begin() + static_cast<std::ptrdiff_t>(2 * half));
  return {std::move(lo), std::move(hi)};
}

PointSet PointSet::unite(const PointSet& other) const {
  auto pts = pts_;
  pts.insert(pts.end(), other.pts_.begin(), other.pts_.end());
  return PointSet(ctx_, std::move(pts));
}

bool PointSet::disjoint_from(const PointSet& other) const {
  auto it = pts_.begin();
  auto jt = other.pts_.begin();
  while (it != pts_.end() && jt != other.pts_.end()) {
    if (*it < *jt)
      ++it;
    else if (*jt < *it)
      ++jt;
    else
      return false;
  }
  return true;
}

bool PointSet::subset_of(const PointSet& other) const {
  return std::includes(other.pts_.begin(), other.pts_.end(), pts_.begin(), pts_.end());
}

void LineMultiset::add(const LineF& line, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  entries_[line] += multiplicity;
  total_ += multiplicity;
}

std::uint64_t LineMultiset::multiplicity(const LineF& line) const {
  const auto it = entries_.find(line);
  return it == entries_.end() ? 0 : it->second;
}

FieldElem distance(const FieldCtx& ctx, PlanePoint u, PlanePoint v) {
  const FieldElem dx = ctx.sub(u.x, v.x);
  const FieldElem dy = ctx.sub(u.y, v.y);
  return ctx.add(ctx.sqr(dx), ctx.sqr(dy));
}

LineF make_line(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c) {
  if (a.rank == 0 && b.rank == 0)
    fail(errc::invalid_argument, "line requires (a, b) != (0, 0)");
  LineF line;
  if (a.rank != 0) {
    const FieldElem s = ctx.inv(a);
    line.a = ctx.one();
    line.b = ctx.mul(s, b);
    line.c = ctx.mul(s, c);
  } else {
    const FieldElem s = ctx.inv(b);
    line.a = ctx.zero();
    line.b = ctx.one();
    line.c = ctx.mul(s, c);
  }
  line.isotropic = ctx.add(ctx.sqr(line.a), ctx.sqr(line.b)) == ctx.zero();
  return line;
}

LineF line_through(const FieldCtx& ctx, PlanePoint u, PlanePoint v) {
  if (u == v) fail(errc::equal_points, "line through equal points is undefined");
  const FieldElem a = ctx.sub(v.y, u.y);
  const FieldElem b = ctx.sub(u.x, v.x);
  const FieldElem c = ctx.add(ctx.mul(a, u.x), ctx.mul(b, u.y));
  return make_line(ctx, a, b, c);
}

bool on_line(const FieldCtx& ctx, const LineF& line, PlanePoint pt) {
  return ctx.add(ctx.mul(line.a, pt.x), ctx.mul(line.b, pt.y)) == line.c;
}

PointSet circle_points(const FieldCtx& ctx, PlanePoint center, FieldElem delta,
                       const PointSet& domain) {
  std::vector<PlanePoint> pts;
  for (const auto& pt : domain.points())
    if (distance(ctx, center, pt) == delta) pts.push_back(pt);
  return PointSet(ctx, std::move(pts));
}

PointSet full_circle_points(const FieldCtx& ctx, PlanePoint center, FieldElem delta) {
  std::vector<PlanePoint> pts;
  for (std::uint64_t xr = 0; xr < ctx.q(); ++xr) {
    const FieldElem x = ctx.element(xr);
    const FieldElem rhs = ctx.sub(delta, ctx.sqr(ctx.sub(x, center.x)));
    for (const FieldElem root : sqrt_field(ctx, rhs))
      pts.push_back({x, ctx.add(center.y, root)});
  }
  return PointSet(ctx, std::move(pts));
}

std::vector<PlanePoint> isotropic_directions(const FieldCtx& ctx) {
  std::vector<PlanePoint> out;
  for (const FieldElem i : sqrt_field(ctx, ctx.from_int(-1)))
    out.push_back({ctx.one(), i});
  return out;
}

std::uint64_t max_isotropic_line_count(const PointSet& E) {
  const FieldCtx& ctx = E.ctx();
  std::uint64_t best = 0;
  for (const PlanePoint dir : isotropic_directions(ctx)) {
    // Lines of direction (1, i) are the level sets of y - i x.
    std::unordered_map<std::uint32_t, std::uint64_t> buckets;
    for (const auto& pt : E.points()) {
      const FieldElem key = ctx.sub(pt.y, ctx.mul(dir.y, pt.x));
      best = std::max(best, ++buckets[key.rank]);
    }
  }
  return best;
}

LineF bisector(const FieldCtx& ctx, PlanePoint a, PlanePoint b) {
  if (a == b) fail(errc::equal_points, "bisector of equal points is undefined");
  const FieldElem two = ctx.from_int(2);
  const FieldElem la = ctx.mul(two, ctx.sub(b.x, a.x));
  const FieldElem lb = ctx.mul(two, ctx.sub(b.y, a.y));
  const FieldElem norm_a = ctx.add(ctx.sqr(a.x), ctx.sqr(a.y));
  const FieldElem norm_b = ctx.add(ctx.sqr(b.x), ctx.sqr(b.y));
  return make_line(ctx, la, lb, ctx.sub(norm_b, norm_a));
}

std::uint64_t incidences(const PointSet& F, const LineMultiset& L) {
  const FieldCtx& ctx = F.ctx();
  std::unordered_map<LineF, std::uint64_t> lookup(L.entries().begin(), L.entries().end());
  std::uint64_t total = 0;
  for (const auto& pt : F.points()) {
    // The q + 1 canonical lines through pt: x + b y = pt.x + b pt.y, plus y = pt.y.
    for (std::uint64_t br = 0; br < ctx.q(); ++br) {
      const FieldElem b = ctx.element(br);
      LineF line{ctx.one(), b, ctx.add(pt.x, ctx.mul(b, pt.y)), false};
      line.isotropic = ctx.add(ctx.one(), ctx.sqr(b)) == ctx.zero();
      const auto it = lookup.find(line);
      if (it != lookup.end()) total += it->second;
    }
    const LineF horizontal{ctx.zero(), ctx.one(), pt.y, false};
    const auto it = lookup.find(horizontal);
    if (it != lookup.end()) total += it->second;
  }
  return total;
}

void write_point_set(std::ostream& out, const PointSet& set) {
  const FieldCtx& ctx = set.ctx();
  out << "p=" << ctx.p() << " e=" << ctx.e() << "\n";
  for (const auto& pt : set.points())
    out << ctx.to_string(pt.x) << "," << ctx.to_string(pt.y) << "\n";
}

namespace {

std::string strip_spaces(const std::string& text) {
  std::string out;
  for (const char ch : text)
    if (ch != ' ' && ch != '\t' && ch != '\r') out += ch;
  return out;
}

std::uint32_t parse_header_field(const std::string& header, const std::string& key) {
  const std::size_t at = header.find(key + "=");
  if (at == std::string::npos)
    fail(errc::parse_error, "point-set header missing '" + key + "=': " + header);
  const char* begin = header.data() + at + key.size() + 1;
  const char* end = header.data() + header.size();
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin)
    fail(errc::parse_error, "bad '" + key + "' value in point-set header");
  return value;
}

}  // namespace

PointSet read_point_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail(errc::parse_error, "empty point-set input");
  const std::uint32_t p = parse_header_field(header, "p");
  const std::uint32_t e = parse_header_field(header, "e");
  const FieldCtx ctx = make_field(p, e);

  std::vector<PlanePoint> pts;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = strip_spaces(raw);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      fail(errc::parse_error, "point line missing ',': " + raw);
    pts.push_back({ctx.parse_elem(line.substr(0, comma)), ctx.parse_elem(line.substr(comma + 1))});
  }
  return PointSet(ctx, std::move(pts));
}

}  // namespace ffgeom
