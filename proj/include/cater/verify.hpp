#pragma once

#include <cstdint>
#include <map>

#include "cater/corpus.hpp"
#include "cater/lexicon.hpp"
#include "cater/rules.hpp"

namespace cater {

struct UnitCount {
  std::uint64_t k = 0;  // units whose word is the designated one
  std::uint64_t n = 0;  // units under a rule-covered condition

  bool operator==(const UnitCount&) const = default;
};

struct UnitCounts {
  UnitCount total;
  std::map<int, UnitCount> per_set;
};

struct VerificationReport {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  double p = 0.0;
  double p_value = 1.0;
  std::map<int, UnitCount> per_set;
};

// A unit is one occurrence of a word of a ruled set together with its
// condition; units under conditions absent from the rule table are skipped.
UnitCounts count_units(const Corpus& corpus, const WatermarkLexicon& lexicon,
                       const RuleTable& rules);

// Hits / units on the reference corpus. Throws Error(NoSupport) when the
// reference has no covered unit.
double estimate_null_p(const Corpus& reference, const WatermarkLexicon& lexicon,
                       const RuleTable& rules);

// 2 * min(P[X >= k], P[X <= k]) for X ~ Binomial(n, p), by exact
// log-space summation, clamped to [0, 1]. Throws InvalidP for p outside
// (0, 1) and ZeroN for n = 0.
double binom_two_tail(std::uint64_t k, std::uint64_t n, double p);

// Throws ZeroN when the suspect corpus has no covered unit.
VerificationReport verify(const Corpus& suspect, const Corpus& reference,
                          const WatermarkLexicon& lexicon, const RuleTable& rules);

}  // namespace cater
