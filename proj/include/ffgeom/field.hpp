#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ffgeom/error.hpp"

namespace ffgeom {

// Element of F_{p^e}, stored as its rank: the base-p packing
// sum_i c_i * p^i of the polynomial-basis coordinates c_0..c_{e-1}.
// A rank below q is canonical by construction, and rank equality is
// coordinate-list equality.
struct FieldElem {
  std::uint32_t rank = 0;

  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

// Arithmetic context for F_q, q = p^e with p an odd prime.  Immutable
// after construction; every operation is pure.
class FieldCtx {
 public:
  static constexpr std::uint64_t kDefaultCeiling = std::uint64_t{1} << 20;

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint64_t q() const { return q_; }
  // Monic irreducible modulus as coefficients c_0..c_e (c_e = 1); empty when e = 1.
  const std::vector<std::uint32_t>& modulus_poly() const { return modulus_poly_; }
  // Quadratic character of -1: +1 iff -1 is a nonzero square in F_q.
  int eta_minus_one() const { return eta_minus_one_; }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }

  FieldElem element(std::uint64_t rank) const;  // bounds-checked
  FieldElem from_int(std::int64_t v) const;     // embeds into the prime subfield
  std::vector<std::uint32_t> coeffs(FieldElem a) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem sqr(FieldElem a) const { return mul(a, a); }
  FieldElem pow(FieldElem a, std::uint64_t exp) const;
  FieldElem inv(FieldElem a) const;

  std::string to_string(FieldElem a) const;           // "c0" or "c0;c1;..."
  FieldElem parse_elem(const std::string& text) const;

  bool operator==(const FieldCtx& other) const { return p_ == other.p_ && e_ == other.e_; }

 private:
  friend FieldCtx make_field(std::uint32_t p, std::uint32_t e, std::uint64_t ceiling);

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_poly_;
  std::vector<std::uint64_t> p_pow_;  // p^0..p^e
  int eta_minus_one_ = 0;
};

// Builds the context for F_{p^e}.  The modulus polynomial is the
// lexicographically smallest monic irreducible of degree e (coefficients
// compared from the highest degree down), verified by trial factorization.
FieldCtx make_field(std::uint32_t p, std::uint32_t e = 1,
                    std::uint64_t ceiling = FieldCtx::kDefaultCeiling);

// 0 for a = 0, +1 for a nonzero square, -1 otherwise; a^((q-1)/2) mapped to {-1,0,+1}.
int quadratic_character(const FieldCtx& ctx, FieldElem a);

// All x with x^2 = a, sorted by rank; size 0, 1 (a = 0) or 2.
std::vector<FieldElem> sqrt_field(const FieldCtx& ctx, FieldElem a);

}  // namespace ffgeom

template <>
struct std::hash<ffgeom::FieldElem> {
  std::size_t operator()(ffgeom::FieldElem a) const noexcept {
    return std::hash<std::uint32_t>{}(a.rank);
  }
};
