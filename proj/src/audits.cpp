#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ffgeom/certify.hpp"
#include "ffgeom/error.hpp"
#include "ffgeom/stats.hpp"
#include "exact_terms.hpp"

// Every verdict (holds, premise_in_range) is decided in exact integer or
// rational arithmetic.  MPFR enters only for the human-readable rhs strings
// and the borderline flag, as a 256-bit directed-rounding enclosure: each
// expression is a sum/product of nonnegative monotone terms, so evaluating
// once all-RNDD and once all-RNDU brackets the true value.

namespace ffgeom {
namespace {

using detail::PowerTerm;

constexpr mpfr_prec_t kPrecision = 256;

class Real {
 public:
  Real() {
    mpfr_init2(v_, kPrecision);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  ~Real() { mpfr_clear(v_); }

  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }

 private:
  mpfr_t v_;
};

std::string real_text(mpfr_srcptr v) {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.24Re", v);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

void set_from_bigint(mpfr_ptr out, const BigInt& v, mpfr_rnd_t rnd) {
  mpfr_set_str(out, v.str().c_str(), 10, rnd);
}

// Nonnegative rationals only: the denominator is rounded the opposite way so
// the quotient stays on the requested side.
void set_from_rational(mpfr_ptr out, const Rational& v, mpfr_rnd_t rnd) {
  const mpfr_rnd_t anti = rnd == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD;
  Real num, den;
  set_from_bigint(num, numerator(v), rnd);
  set_from_bigint(den, denominator(v), anti);
  mpfr_div(out, num, den, rnd);
}

void set_power_term(mpfr_ptr out, const PowerTerm& term, mpfr_rnd_t rnd) {
  if (term.base == 0) {
    mpfr_set_zero(out, 1);
    return;
  }
  Real base;
  mpfr_set_ui(base, term.base, rnd);
  mpfr_pow_ui(base, base, 1ul << term.level, rnd);
  mpfr_rootn_ui(base, base, detail::pow3(term.level), rnd);
  Real coeff;
  set_from_rational(coeff, term.coeff, rnd);
  mpfr_mul(out, coeff, base, rnd);
}

// Fills rhs / rhs_lo / rhs_hi from a directed evaluator.
template <typename Eval>
void fill_enclosure(AuditReport& report, Real& lo, Real& hi, Eval eval) {
  eval(static_cast<mpfr_ptr>(lo), MPFR_RNDD);
  eval(static_cast<mpfr_ptr>(hi), MPFR_RNDU);
  report.rhs_lo = real_text(lo);
  report.rhs_hi = real_text(hi);
  report.rhs = report.rhs_hi;
}

// lhs <= rhs + rhs * 1e-9, resolved conservatively from the upper enclosure.
bool holds_with_tolerance(std::uint64_t lhs, mpfr_srcptr hi) {
  Real tol, limit, left;
  mpfr_mul_d(tol, hi, 1e-9, MPFR_RNDU);
  mpfr_add(limit, hi, tol, MPFR_RNDU);
  mpfr_set_ui(left, lhs, MPFR_RNDN);  // exact: 256 bits cover any uint64
  return mpfr_cmp(left, limit) <= 0;
}

// |lhs - rhs| <= rhs * 1e-9, widened by the enclosure so no true borderline
// case is missed.
bool borderline_flag(std::uint64_t lhs, mpfr_srcptr lo, mpfr_srcptr hi) {
  Real tol, low_edge, high_edge, left;
  mpfr_mul_d(tol, hi, 1e-9, MPFR_RNDU);
  mpfr_sub(low_edge, lo, tol, MPFR_RNDD);
  mpfr_add(high_edge, hi, tol, MPFR_RNDU);
  mpfr_set_ui(left, lhs, MPFR_RNDN);
  return mpfr_cmp(left, low_edge) >= 0 && mpfr_cmp(left, high_edge) <= 0;
}

void require_prime_field(const FieldCtx& ctx, const char* what) {
  if (ctx.e() != 1)
    fail(errc::regime_mismatch, std::string(what) + " is stated over prime fields only");
}

std::string size_witness(const PointSet& E, std::uint64_t lhs, const std::string& rhs) {
  return "p=" + std::to_string(E.ctx().p()) + " e=" + std::to_string(E.ctx().e()) +
         " n=" + std::to_string(E.size()) + " lhs=" + std::to_string(lhs) + " rhs=" + rhs;
}

}  // namespace

AuditReport audit_triple_bound(const PointSet& E) {
  require_prime_field(E.ctx(), "the isosceles triple bound");
  const std::uint32_t p = E.ctx().p();
  const std::uint64_t n = E.size();

  AuditReport report;
  report.inequality = "triple_bound";
  report.lhs = isosceles_triples(E, E).value;
  report.premise_in_range = BigInt(625) * big_pow(p, 5) <= big_pow(BigInt(n), 4) &&
                            big_pow(BigInt(n), 3) <= big_pow(p, 4);

  // n^3/p + 5 p^(2/3) n^(5/3) + 5 p^(1/4) n^2
  Real lo, hi;
  fill_enclosure(report, lo, hi, [&](mpfr_ptr out, mpfr_rnd_t rnd) {
    Real cubic, mid, quad, a, b;
    mpfr_set_ui(cubic, n, rnd);
    mpfr_pow_ui(cubic, cubic, 3, rnd);
    mpfr_div_ui(cubic, cubic, p, rnd);
    mpfr_set_ui(a, p, rnd);
    mpfr_pow_ui(a, a, 2, rnd);
    mpfr_rootn_ui(a, a, 3, rnd);
    mpfr_set_ui(b, n, rnd);
    mpfr_pow_ui(b, b, 5, rnd);
    mpfr_rootn_ui(b, b, 3, rnd);
    mpfr_mul(mid, a, b, rnd);
    mpfr_mul_ui(mid, mid, 5, rnd);
    mpfr_set_ui(quad, p, rnd);
    mpfr_rootn_ui(quad, quad, 4, rnd);
    mpfr_set_ui(b, n, rnd);
    mpfr_sqr(b, b, rnd);
    mpfr_mul(quad, quad, b, rnd);
    mpfr_mul_ui(quad, quad, 5, rnd);
    mpfr_add(out, cubic, mid, rnd);
    mpfr_add(out, out, quad, rnd);
  });
  report.holds = holds_with_tolerance(report.lhs, hi);
  report.borderline = borderline_flag(report.lhs, lo, hi);
  if (!report.holds) report.witness = size_witness(E, report.lhs, report.rhs);
  return report;
}

AuditReport audit_bisector_bound(const PointSet& E) {
  require_prime_field(E.ctx(), "the bisector energy bound");
  const BigInt p = E.ctx().p();
  const BigInt n = E.size();

  AuditReport report;
  report.inequality = "bisector_bound";
  report.lhs = bisector_energy(E);
  report.premise_in_range = true;  // unconditional over prime fields

  // 4 n^4 / p^2 + 10 p n^2, exact.
  const Rational rhs = Rational(4 * big_pow(n, 4), p * p) + Rational(10 * p * n * n);
  report.holds = Rational(report.lhs) <= rhs;
  report.borderline =
      boost::multiprecision::abs(Rational(report.lhs) - rhs) * 1'000'000'000 <= rhs;
  Real lo, hi;
  fill_enclosure(report, lo, hi,
                 [&](mpfr_ptr out, mpfr_rnd_t rnd) { set_from_rational(out, rhs, rnd); });
  report.notes.push_back("rhs exactly " + rational_to_string(rhs));
  if (!report.holds) report.witness = size_witness(E, report.lhs, rational_to_string(rhs));
  return report;
}

AuditReport audit_incidence_bound(const PointSet& F, const LineMultiset& L) {
  require_prime_field(F.ctx(), "the point-line incidence bound");
  const BigInt p = F.ctx().p();
  const BigInt f_size = F.size();
  const BigInt total = L.total();
  BigInt sum_sq = 0;
  for (const auto& [line, mult] : L.entries()) sum_sq += BigInt(mult) * mult;

  AuditReport report;
  report.inequality = "incidence_bound";
  report.lhs = incidences(F, L);
  report.premise_in_range = true;  // unconditional over prime fields

  // lhs <= |F||L|/p + sqrt(p |F| sum m^2), decided by squaring the excess.
  const BigInt excess = p * report.lhs - f_size * total;
  report.holds = excess <= 0 || excess * excess <= big_pow(p, 3) * f_size * sum_sq;

  Real lo, hi;
  fill_enclosure(report, lo, hi, [&](mpfr_ptr out, mpfr_rnd_t rnd) {
    Real linear, root;
    set_from_rational(linear, Rational(f_size * total, p), rnd);
    set_from_bigint(root, p * f_size * sum_sq, rnd);
    mpfr_sqrt(root, root, rnd);
    mpfr_add(out, linear, root, rnd);
  });
  report.borderline = borderline_flag(report.lhs, lo, hi);
  if (!report.holds) report.witness = size_witness(F, report.lhs, report.rhs);
  return report;
}

AuditReport audit_K_constant(const PointSet& E, const Rational& K, bool enforce_restriction) {
  if (K <= 0) fail(errc::invalid_argument, "K must be positive");
  const BigInt p = E.ctx().p();
  const BigInt n = E.size();
  const bool restriction_ok = big_pow(n, 3) <= big_pow(p, 4);
  if (enforce_restriction && !restriction_ok)
    fail(errc::restriction_violated,
         "|E|^3 = " + big_pow(n, 3).str() + " exceeds char^4 = " + big_pow(p, 4).str());

  AuditReport report;
  report.inequality = "K_constant";
  report.lhs = isosceles_triples(E, E).value;
  report.premise_in_range = restriction_ok;

  // Bound K n^(7/3); holds iff lhs^3 <= K^3 n^7, exact.
  report.holds =
      Rational(big_pow(BigInt(report.lhs), 3)) <= detail::rational_pow(K, 3) * big_pow(n, 7);
  Real lo, hi;
  fill_enclosure(report, lo, hi, [&](mpfr_ptr out, mpfr_rnd_t rnd) {
    Real root, coeff;
    set_from_bigint(root, big_pow(n, 7), rnd);
    mpfr_rootn_ui(root, root, 3, rnd);
    set_from_rational(coeff, K, rnd);
    mpfr_mul(out, coeff, root, rnd);
  });
  report.borderline = borderline_flag(report.lhs, lo, hi);

  // Minimal constant achieving equality: K' = lhs / n^(7/3).
  if (report.lhs == 0) {
    report.notes.push_back("K' = 0");
  } else {
    Real ratio, root;
    set_from_bigint(root, big_pow(n, 7), MPFR_RNDN);
    mpfr_rootn_ui(root, root, 3, MPFR_RNDN);
    mpfr_set_ui(ratio, report.lhs, MPFR_RNDN);
    mpfr_div(ratio, ratio, root, MPFR_RNDN);
    report.notes.push_back("K' ~= " + real_text(ratio) + " with K'^3 = " +
                           rational_to_string(Rational(big_pow(BigInt(report.lhs), 3),
                                                       big_pow(n, 7))));
  }
  if (!report.holds) report.witness = size_witness(E, report.lhs, report.rhs);
  return report;
}

AuditReport audit_M_condition(const PointSet& E, const PointSet& F, std::uint32_t k,
                              const Rational& K) {
  if (k < 1) fail(errc::invalid_argument, "k must be at least 1");
  if (K <= 0) fail(errc::invalid_argument, "K must be positive");
  if (!(E.ctx() == F.ctx())) fail(errc::invalid_argument, "mismatched field contexts");

  AuditReport report;
  report.inequality = "M_condition";
  report.lhs = max_isotropic_line_count(E.unite(F));
  report.premise_in_range = true;  // no side conditions

  const PowerTerm ceiling = detail::isotropic_ceiling_term(F.size(), k, K);
  report.holds = detail::compare_power_terms({Rational(report.lhs), 1, 0}, ceiling) <= 0;
  Real lo, hi;
  fill_enclosure(report, lo, hi,
                 [&](mpfr_ptr out, mpfr_rnd_t rnd) { set_power_term(out, ceiling, rnd); });
  report.borderline = borderline_flag(report.lhs, lo, hi);
  report.notes.push_back("ceiling exactly " + detail::power_term_text(ceiling));

  // Half-pool inheritance: the ceiling of every sub-instance (edge counts
  // 1..k-1 over floor(|F|/2) points) must dominate the top-level ceiling.
  for (std::uint32_t sub_k = 1; sub_k < k; ++sub_k) {
    const PowerTerm sub = detail::isotropic_ceiling_term(F.size() / 2, sub_k, K);
    const bool ok = detail::compare_power_terms(sub, ceiling) >= 0;
    report.notes.push_back("inherited ceiling k'=" + std::to_string(sub_k) + ": " +
                           detail::power_term_text(sub) + (ok ? " >= " : " < ") +
                           detail::power_term_text(ceiling));
  }
  if (!report.holds)
    report.witness = "max isotropic count " + std::to_string(report.lhs) + " exceeds " +
                     detail::power_term_text(ceiling);
  return report;
}

}  // namespace ffgeom
