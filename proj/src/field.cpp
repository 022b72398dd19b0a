#include "ffgeom/field.hpp"

#include <algorithm>
#include <charconv>

namespace ffgeom {
namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Poly = std::vector<std::uint32_t>;  // coefficients c_0..c_deg, c_deg != 0 unless zero poly

int poly_deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// Remainder of f by monic-leading g over F_p.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  const int dg = poly_deg(g);
  const std::uint64_t lead_inv = [&] {
    // g's leading coefficient is 1 in every call site, but keep it general.
    std::uint64_t base = g[dg], acc = 1, e = p - 2;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return acc;
  }();
  for (int df = poly_deg(f); df >= dg; df = poly_deg(f)) {
    const std::uint64_t scale = f[df] % p * lead_inv % p;
    for (int i = 0; i <= dg; ++i) {
      const std::uint64_t sub = scale * g[i] % p;
      auto& c = f[df - dg + i];
      c = static_cast<std::uint32_t>((c + p - sub) % p);
    }
  }
  return f;
}

bool poly_is_zero(const Poly& f) { return poly_deg(f) < 0; }

// Irreducibility over F_p by trial division: a composite of degree e has a
// monic factor of degree in [1, e/2], and it suffices to try all monic
// polynomials of those degrees.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const int e = poly_deg(f);
  if (f[0] == 0) return false;  // divisible by x
  for (int d = 1; 2 * d <= e; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    Poly g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t m = 0; m < count; ++m) {
      std::uint64_t rest = m;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (poly_is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

FieldCtx make_field(std::uint32_t p, std::uint32_t e, std::uint64_t ceiling) {
  if (p == 2) fail(errc::even_characteristic, "characteristic 2 is not supported");
  if (!is_prime_u32(p)) fail(errc::not_prime, "p = " + std::to_string(p) + " is not prime");
  if (e < 1) fail(errc::invalid_argument, "extension degree must be at least 1");

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.e_ = e;
  ctx.p_pow_.assign(e + 1, 1);
  for (std::uint32_t i = 1; i <= e; ++i) {
    ctx.p_pow_[i] = ctx.p_pow_[i - 1] * p;
    if (ctx.p_pow_[i] > ceiling)
      fail(errc::too_large, "q = " + std::to_string(p) + "^" + std::to_string(e) +
                                " exceeds the ceiling " + std::to_string(ceiling));
  }
  ctx.q_ = ctx.p_pow_[e];

  if (e > 1) {
    // Candidates x^e + c_{e-1} x^{e-1} + ... + c_0 in ascending order of the
    // digit string (c_{e-1}, ..., c_0); rank packing makes that ascending m.
    Poly f(e + 1, 0);
    f[e] = 1;
    bool found = false;
    for (std::uint64_t m = 0; m < ctx.q_; ++m) {
      std::uint64_t rest = m;
      for (std::uint32_t i = 0; i < e; ++i) {
        f[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (poly_irreducible(f, p)) {
        found = true;
        break;
      }
    }
    if (!found) fail(errc::invalid_argument, "no irreducible modulus found");  // unreachable
    ctx.modulus_poly_ = f;
  }

  ctx.eta_minus_one_ = quadratic_character(ctx, ctx.from_int(-1));
  return ctx;
}

FieldElem FieldCtx::element(std::uint64_t rank) const {
  if (rank >= q_)
    fail(errc::invalid_argument, "rank " + std::to_string(rank) + " out of range for q = " +
                                     std::to_string(q_));
  return {static_cast<std::uint32_t>(rank)};
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  const std::int64_t m = static_cast<std::int64_t>(p_);
  return {static_cast<std::uint32_t>(((v % m) + m) % m)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(FieldElem a) const {
  std::vector<std::uint32_t> out(e_);
  std::uint64_t rest = a.rank;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out[i] = static_cast<std::uint32_t>(rest % p_);
    rest /= p_;
  }
  return out;
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  if (e_ == 1) return {static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.rank) + b.rank) % p_)};
  std::uint64_t out = 0, ra = a.rank, rb = b.rank;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += (ra % p_ + rb % p_) % p_ * p_pow_[i];
    ra /= p_;
    rb /= p_;
  }
  return {static_cast<std::uint32_t>(out)};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::neg(FieldElem a) const {
  if (e_ == 1) return {a.rank == 0 ? 0 : p_ - a.rank};
  std::uint64_t out = 0, ra = a.rank;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const std::uint32_t c = static_cast<std::uint32_t>(ra % p_);
    out += static_cast<std::uint64_t>(c == 0 ? 0 : p_ - c) * p_pow_[i];
    ra /= p_;
  }
  return {static_cast<std::uint32_t>(out)};
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (e_ == 1)
    return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.rank) * b.rank % p_)};
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  // Convolution; p^2 * e stays well below 2^64 at q <= 2^20.
  std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
  }
  // Reduce by the monic modulus from the top down.
  for (int i = static_cast<int>(prod.size()) - 1; i >= static_cast<int>(e_); --i) {
    const std::uint64_t c = prod[i] % p_;
    if (c == 0) continue;
    for (std::uint32_t j = 0; j < e_; ++j) {
      const std::uint64_t sub = c * modulus_poly_[j] % p_;
      auto& slot = prod[i - e_ + j];
      slot = (slot + p_ - sub) % p_;
    }
    prod[i] = 0;
  }
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < e_; ++i) out += prod[i] % p_ * p_pow_[i];
  return {static_cast<std::uint32_t>(out)};
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t exp) const {
  FieldElem acc = one(), base = a;
  while (exp) {
    if (exp & 1) acc = mul(acc, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return acc;
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.rank == 0) fail(errc::invalid_argument, "division by zero");
  return pow(a, q_ - 2);
}

std::string FieldCtx::to_string(FieldElem a) const {
  if (e_ == 1) return std::to_string(a.rank);
  std::string out;
  const auto cs = coeffs(a);
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (i) out += ';';
    out += std::to_string(cs[i]);
  }
  return out;
}

FieldElem FieldCtx::parse_elem(const std::string& text) const {
  std::uint64_t rank = 0;
  std::size_t pos = 0, coord = 0;
  while (true) {
    const std::size_t next = text.find(';', pos);
    const std::string_view piece(text.data() + pos,
                                 (next == std::string::npos ? text.size() : next) - pos);
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc{} || ptr != piece.data() + piece.size())
      fail(errc::parse_error, "bad field element coordinate '" + std::string(piece) + "'");
    if (value >= p_)
      fail(errc::parse_error, "coordinate " + std::to_string(value) + " not reduced mod " +
                                  std::to_string(p_));
    if (coord >= e_) fail(errc::parse_error, "too many coordinates in '" + text + "'");
    rank += static_cast<std::uint64_t>(value) * p_pow_[coord];
    ++coord;
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (coord != e_)
    fail(errc::parse_error, "expected " + std::to_string(e_) + " coordinates in '" + text + "'");
  return {static_cast<std::uint32_t>(rank)};
}

int quadratic_character(const FieldCtx& ctx, FieldElem a) {
  if (a.rank == 0) return 0;
  return ctx.pow(a, (ctx.q() - 1) / 2) == ctx.one() ? +1 : -1;
}

std::vector<FieldElem> sqrt_field(const FieldCtx& ctx, FieldElem a) {
  if (a.rank == 0) return {ctx.zero()};
  if (quadratic_character(ctx, a) != +1) return {};

  const std::uint64_t q = ctx.q();
  FieldElem x;
  if (q % 4 == 3) {
    x = ctx.pow(a, (q + 1) / 4);
  } else {
    // Tonelli-Shanks in the cyclic group of order q - 1 = 2^s * t.
    std::uint64_t t = q - 1;
    unsigned s = 0;
    while (t % 2 == 0) {
      t /= 2;
      ++s;
    }
    FieldElem z = ctx.element(2);  // deterministic non-residue search
    while (quadratic_character(ctx, z) != -1) z = ctx.element(z.rank + 1);

    unsigned m = s;
    FieldElem c = ctx.pow(z, t);
    FieldElem u = ctx.pow(a, t);
    x = ctx.pow(a, (t + 1) / 2);
    while (u != ctx.one()) {
      unsigned i = 0;
      for (FieldElem w = u; w != ctx.one(); w = ctx.sqr(w)) ++i;
      FieldElem b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = ctx.sqr(b);
      m = i;
      c = ctx.sqr(b);
      u = ctx.mul(u, c);
      x = ctx.mul(x, b);
    }
  }

  FieldElem nx = ctx.neg(x);
  if (nx.rank < x.rank) std::swap(x, nx);
  return {x, nx};
}

}  // namespace ffgeom
