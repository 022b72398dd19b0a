#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffgeom/error.hpp"

namespace ffgeom {

// All inequality premises and thresholds are decided in exact integer /
// rational arithmetic; floating point never participates in a verdict.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1u;
  }
  return r;
}

// a^ea <= b^eb, exactly.
inline bool pow_le(const BigInt& a, unsigned ea, const BigInt& b, unsigned eb) {
  return big_pow(a, ea) <= big_pow(b, eb);
}

// Largest n with n^k <= v (integer k-th root).
inline BigInt iroot(const BigInt& v, unsigned k) {
  if (v < 0) fail(errc::invalid_argument, "iroot of negative value");
  if (v == 0 || k == 1) return v;
  BigInt lo = 0, hi = 1;
  while (big_pow(hi, k) <= v) hi <<= 1;
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) >> 1;
    if (big_pow(mid, k) <= v)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// count >= threshold, threshold given as an exact rational.
inline bool meets_threshold(std::uint64_t count, const Rational& threshold) {
  return Rational(count) >= threshold;
}

Rational parse_rational(const std::string& text);  // "3", "5/129"
std::string rational_to_string(const Rational& r);

// splitmix64: the fixed 64-bit generator used for all seeded generation.
// Chosen because the algorithm is fully specified by its two mixing
// constants, so sequences reproduce bit-exactly everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n) by rejection.
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) fail(errc::invalid_argument, "bounded(0)");
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ffgeom
