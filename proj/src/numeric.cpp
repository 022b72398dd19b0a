#include "ffgeom/numeric.hpp"

#include "ffgeom/error.hpp"

namespace ffgeom {

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { fail(errc::parse_error, "bad rational '" + text + "'"); };
  if (text.empty()) bad();
  const std::size_t slash = text.find('/');
  const auto parse_int = [&](std::size_t begin, std::size_t end) -> BigInt {
    std::size_t i = begin;
    if (i < end && (text[i] == '+' || text[i] == '-')) ++i;
    if (i == end) bad();
    for (std::size_t j = i; j < end; ++j)
      if (text[j] < '0' || text[j] > '9') bad();
    return BigInt(text.substr(begin, end - begin));
  };
  const BigInt num = parse_int(0, slash == std::string::npos ? text.size() : slash);
  if (slash == std::string::npos) return Rational(num);
  const BigInt den = parse_int(slash + 1, text.size());
  if (den == 0) bad();
  return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace ffgeom
