#pragma once

#include <cstdint>
#include <string>

#include "ffgeom/numeric.hpp"

namespace ffgeom::detail {

inline Rational rational_pow(const Rational& r, std::uint64_t exp) {
  if (exp > 4'000'000) fail(errc::too_large, "rational power exponent too large");
  return {big_pow(numerator(r), static_cast<unsigned>(exp)),
          big_pow(denominator(r), static_cast<unsigned>(exp))};
}

inline std::uint64_t pow3(std::uint32_t m) {
  std::uint64_t r = 1;
  while (m--) r *= 3;
  return r;
}

// coeff * base^((2/3)^level), compared exactly by raising both sides to the
// 3^max(level) power, which clears every fractional exponent.  The cap on the
// level keeps the integer powers at a tractable size.
struct PowerTerm {
  Rational coeff;
  std::uint64_t base = 1;
  std::uint32_t level = 0;
};

inline constexpr std::uint32_t kMaxPowerLevel = 12;

inline int compare_power_terms(const PowerTerm& a, const PowerTerm& b) {
  const std::uint32_t m = std::max(a.level, b.level);
  if (m > kMaxPowerLevel)
    fail(errc::too_large, "exact comparison needs 3^" + std::to_string(m) + "-th powers");
  const auto raised = [m](const PowerTerm& t) {
    const std::uint64_t base_exp = (std::uint64_t{1} << t.level) * pow3(m - t.level);
    return rational_pow(t.coeff, pow3(m)) *
           Rational(big_pow(BigInt(t.base), static_cast<unsigned>(base_exp)));
  };
  const Rational lhs = raised(a), rhs = raised(b);
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

inline std::string power_term_text(const PowerTerm& t) {
  if (t.level == 0) return rational_to_string(t.coeff * t.base);
  return rational_to_string(t.coeff) + "*" + std::to_string(t.base) + "^((2/3)^" +
         std::to_string(t.level) + ")";
}

// Isotropic-line ceiling (1/4) (16K)^-(k-1) floor(f_size/8)^((2/3)^(k-1)).
inline PowerTerm isotropic_ceiling_term(std::uint64_t f_size, std::uint32_t k,
                                        const Rational& K) {
  if (k == 0) fail(errc::invalid_argument, "ceiling needs k >= 1");
  return {Rational(1, 4) / rational_pow(16 * K, k - 1), f_size / 8, k - 1};
}

}  // namespace ffgeom::detail
