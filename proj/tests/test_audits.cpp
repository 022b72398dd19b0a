#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <string>

#include "ffgeom/certify.hpp"
#include "ffgeom/error.hpp"
#include "ffgeom/gen.hpp"
#include "ffgeom/numeric.hpp"
#include "ffgeom/oracle.hpp"
#include "ffgeom/plane.hpp"

using namespace ffgeom;

namespace {

PlanePoint pt(const FieldCtx& ctx, std::int64_t x, std::int64_t y) {
  return {ctx.from_int(x), ctx.from_int(y)};
}

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  return errc::invalid_argument;
}

double as_double(const std::string& text) { return std::strtod(text.c_str(), nullptr); }

bool has_note(const AuditReport& report, const std::string& needle) {
  for (const std::string& note : report.notes)
    if (note.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("triple-count audit on the full plane") {
  const auto f3 = make_field(3);
  const AuditReport report = audit_triple_bound(PointSet::full_plane(f3));
  CHECK(report.inequality == "triple_bound");
  CHECK(report.lhs == 216);
  // 243 + 5*3^(2/3)*9^(5/3) + 5*3^(1/4)*81, enclosed by directed rounding.
  CHECK(as_double(report.rhs_lo) > 1180.0);
  CHECK(as_double(report.rhs_hi) < 1182.0);
  CHECK(as_double(report.rhs_lo) <= as_double(report.rhs_hi));
  CHECK(report.holds);
  CHECK_FALSE(report.borderline);
  CHECK_FALSE(report.premise_in_range);
  CHECK_FALSE(report.witness.has_value());
}

TEST_CASE("triple-count audit trivial and sweep shapes") {
  const auto f5 = make_field(5);
  const AuditReport single = audit_triple_bound(PointSet(f5, {pt(f5, 1, 2)}));
  CHECK(single.lhs == 0);
  CHECK(single.holds);

  const auto f11 = make_field(11);
  const PointSet E = generate(f11, {GenKind::random, 40, 0, 404});
  const AuditReport sweep = audit_triple_bound(E);
  CHECK_FALSE(sweep.premise_in_range);
  CHECK(sweep.lhs == oracle::isosceles_triples(E, E));

  CHECK(code_of([&] { audit_triple_bound(PointSet(make_field(3, 2))); }) ==
        errc::regime_mismatch);
}

TEST_CASE("bisector-energy audit is exact-rational") {
  const auto f5 = make_field(5);

  const AuditReport pair = audit_bisector_bound(PointSet(f5, {pt(f5, 0, 0), pt(f5, 0, 1)}));
  CHECK(pair.lhs == 4);
  // 4*2^4/5^2 + 10*5*2^2 = 64/25 + 200.
  CHECK(has_note(pair, "rhs exactly 5064/25"));
  CHECK(pair.holds);
  CHECK_FALSE(pair.borderline);

  const AuditReport single = audit_bisector_bound(PointSet(f5, {pt(f5, 3, 3)}));
  CHECK(single.lhs == 0);
  CHECK(single.holds);

  const AuditReport collinear =
      audit_bisector_bound(PointSet(f5, {pt(f5, 0, 0), pt(f5, 0, 1), pt(f5, 0, 2)}));
  CHECK(collinear.lhs == 12);
  // 4*3^4/5^2 + 10*5*3^2 = 324/25 + 450.
  CHECK(has_note(collinear, "rhs exactly 11574/25"));
  CHECK(collinear.holds);

  // The enclosure strings agree with the exact rational to double precision.
  CHECK(as_double(collinear.rhs_lo) == doctest::Approx(11574.0 / 25).epsilon(1e-12));
  CHECK(as_double(collinear.rhs_hi) == doctest::Approx(11574.0 / 25).epsilon(1e-12));
}

TEST_CASE("incidence audit single point and empty set") {
  const auto f5 = make_field(5);
  LineMultiset L;
  L.add(make_line(f5, f5.from_int(0), f5.from_int(1), f5.from_int(0)));  // y = 0

  const AuditReport one = audit_incidence_bound(PointSet(f5, {pt(f5, 0, 0)}), L);
  CHECK(one.inequality == "incidence_bound");
  CHECK(one.lhs == 1);
  // 1/5 + sqrt(5) = 2.4360679...
  CHECK(as_double(one.rhs_lo) > 2.43);
  CHECK(as_double(one.rhs_hi) < 2.44);
  CHECK(one.holds);
  CHECK(one.premise_in_range);
  CHECK_FALSE(one.witness.has_value());

  const AuditReport empty = audit_incidence_bound(PointSet(f5), L);
  CHECK(empty.lhs == 0);
  CHECK(empty.holds);
}

TEST_CASE("incidence audit never reports a violation on random sweeps") {
  SplitMix64 rng(777);
  for (const std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const auto ctx = make_field(p);
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t n = 2 + rng.bounded(18);
      const PointSet F = generate(ctx, {GenKind::random, n, 0, rng.next()});
      const PointSet E = generate(ctx, {GenKind::random, n, 0, rng.next()});
      LineMultiset L;
      const auto& pts = E.points();
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) L.add(bisector(ctx, pts[a], pts[b]));
      const AuditReport report = audit_incidence_bound(F, L);
      REQUIRE(report.holds);
      CHECK(report.lhs == oracle::incidences(F, L));
    }
  }
}

TEST_CASE("minimal tree-count constant is reported by its exact cube") {
  const auto f3 = make_field(3);
  const PointSet all = PointSet::full_plane(f3);

  const AuditReport report = audit_K_constant(all, Rational(4));
  CHECK(report.inequality == "K_constant");
  CHECK(report.lhs == 216);
  CHECK(report.holds);  // K'^3 = 216^3 / 9^7 = 512/243 <= 64
  CHECK(has_note(report, "K'^3 = 512/243"));
  // K' = (512/243)^(1/3) = 1.28199...
  CHECK(as_double(report.rhs_lo) > 5.0);  // rhs = 4 * 9^(7/3) ~ 674
  CHECK_FALSE(report.premise_in_range);   // 9^3 = 729 > 3^4 = 81

  // The restriction can be promoted from premise to error.
  CHECK(code_of([&] { audit_K_constant(all, Rational(4), true); }) ==
        errc::restriction_violated);

  const AuditReport single = audit_K_constant(PointSet(f3, {pt(f3, 0, 0)}), Rational(4));
  CHECK(single.lhs == 0);
  CHECK(single.holds);
  CHECK(has_note(single, "K' = 0"));

  CHECK(code_of([&] { audit_K_constant(all, Rational(0)); }) == errc::invalid_argument);

  // A candidate below the observed cube fails: K = 1 gives K^3 = 1 < 512/243.
  const AuditReport tight = audit_K_constant(all, Rational(1));
  CHECK_FALSE(tight.holds);
  CHECK(tight.witness.has_value());
}

TEST_CASE("isotropic ceiling audit matches the closed forms") {
  // No isotropic lines mod 3: lhs 0 holds for every k.
  const auto f3 = make_field(3);
  const PointSet all3 = PointSet::full_plane(f3);
  const AuditReport none = audit_M_condition(all3, all3, 1, Rational(4));
  CHECK(none.inequality == "M_condition");
  CHECK(none.lhs == 0);
  CHECK(none.holds);

  // Five points on one isotropic line of F_5: ceiling (1/4)*floor(5/8) = 0 < 5.
  const auto f5 = make_field(5);
  const PointSet iso = generate(f5, {GenKind::isotropic_line, 5, 0, 3});
  const AuditReport packed = audit_M_condition(iso, iso, 1, Rational(4));
  CHECK(packed.lhs == 5);
  CHECK_FALSE(packed.holds);
  CHECK(packed.witness.has_value());

  // k=2, |F| = 64, K = 4: ceiling = (1/4)(1/64)*8^(2/3) = 1/64 exactly.
  const auto f19 = make_field(19);
  const PointSet grid = generate(f19, {GenKind::grid, 8, 0, 0});
  REQUIRE(grid.size() == 64);
  const AuditReport ceiling = audit_M_condition(grid, grid, 2, Rational(4));
  CHECK(ceiling.lhs == 0);  // 19 = 3 mod 4: no isotropic lines
  CHECK(ceiling.holds);
  CHECK(has_note(ceiling, "ceiling exactly 1/256*8^((2/3)^1)"));
  CHECK(as_double(ceiling.rhs_lo) == doctest::Approx(1.0 / 64).epsilon(1e-9));
  CHECK(as_double(ceiling.rhs_hi) == doctest::Approx(1.0 / 64).epsilon(1e-9));

  // Half-size inheritance is evaluated for every lower level.
  const AuditReport deep = audit_M_condition(grid, grid, 3, Rational(4));
  CHECK(has_note(deep, "inherited ceiling k'=1"));
  CHECK(has_note(deep, "inherited ceiling k'=2"));
}

TEST_CASE("audit premises and witnesses stay consistent on a sweep") {
  SplitMix64 rng(31337);
  const auto f7 = make_field(7);
  for (int i = 0; i < 30; ++i) {
    const std::uint64_t n = 2 + rng.bounded(20);
    const PointSet E = generate(f7, {GenKind::random, n, 0, rng.next()});

    for (const AuditReport& report :
         {audit_triple_bound(E), audit_bisector_bound(E), audit_K_constant(E),
          audit_M_condition(E, E, 2)}) {
      CHECK(report.witness.has_value() == !report.holds);
      CHECK(as_double(report.rhs_lo) <= as_double(report.rhs_hi));
      CHECK(report.rhs == report.rhs_hi);
    }
  }
}
