#include "ffgeom/params.hpp"

#include "ffgeom/error.hpp"

namespace ffgeom {

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::medium_prime: return "medium_prime";
    case Regime::large_prime: return "large_prime";
    case Regime::large_q: return "large_q";
    case Regime::arbitrary: return "arbitrary";
    case Regime::auto_prime: return "auto_prime";
  }
  return "?";
}

Regime parse_regime(const std::string& name) {
  if (name == "medium_prime") return Regime::medium_prime;
  if (name == "large_prime") return Regime::large_prime;
  if (name == "large_q") return Regime::large_q;
  if (name == "arbitrary") return Regime::arbitrary;
  if (name == "auto_prime") return Regime::auto_prime;
  fail(errc::parse_error, "unknown regime '" + name + "'");
}

const char* split_strategy_name(SplitStrategy strategy) {
  return strategy == SplitStrategy::alternating ? "alternating" : "halves";
}

SplitStrategy parse_split_strategy(const std::string& name) {
  if (name == "alternating") return SplitStrategy::alternating;
  if (name == "halves") return SplitStrategy::halves;
  fail(errc::parse_error, "unknown split strategy '" + name + "'");
}

}  // namespace ffgeom
