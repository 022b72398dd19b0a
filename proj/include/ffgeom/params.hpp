#pragma once

#include <cstdint>
#include <string>

#include "ffgeom/numeric.hpp"

namespace ffgeom {

// Size regime the certifier runs under; auto_prime dispatches among the
// prime-field regimes by exact integer size comparisons.
enum class Regime { medium_prime, large_prime, large_q, arbitrary, auto_prime };

// Deterministic pool split used by the lower-bound recursion: `alternating`
// interleaves lexicographic ranks, `halves` cuts the sorted order in half.
enum class SplitStrategy { alternating, halves };

struct CertifyParams {
  Regime regime = Regime::arbitrary;
  Rational K = 4;  // tree-count constant; meaningful values are >= 4
  // "default" uses the regime's own threshold; "fixed:<rational>" overrides it.
  std::string threshold_rule = "default";
  SplitStrategy split_strategy = SplitStrategy::alternating;
  std::uint64_t enumeration_budget = 10'000'000;
};

const char* regime_name(Regime regime);
Regime parse_regime(const std::string& name);
const char* split_strategy_name(SplitStrategy strategy);
SplitStrategy parse_split_strategy(const std::string& name);

}  // namespace ffgeom
