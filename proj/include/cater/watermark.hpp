#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "cater/corpus.hpp"
#include "cater/lexicon.hpp"
#include "cater/rules.hpp"

namespace cater {

struct ApplicationCounters {
  std::uint64_t candidates_seen = 0;
  std::uint64_t substituted = 0;
  std::uint64_t unchanged_by_rule = 0;
  std::uint64_t fallback_identity = 0;

  ApplicationCounters& operator+=(const ApplicationCounters& o);
  bool operator==(const ApplicationCounters&) const = default;
};

struct ApplicationLog {
  ApplicationCounters totals;
  std::map<int, ApplicationCounters> per_set;

  void merge(const ApplicationLog& other);
};

struct Watermarked {
  Corpus corpus;
  ApplicationLog log;
};

// Copies the casing pattern of `original` onto `word`: ALL-CAPS (two or
// more letters, none lowercase), Title-case, or lowercase.
std::string match_case(std::string_view original, std::string_view word);

// Conditional substitution. Only tokens of sets present in `rules` are
// candidates; conditions are read from the stored POS/DEP annotations,
// which substitution never edits. Throws FeatureMismatch when `requested`
// disagrees with the feature the rules were built under.
Watermarked apply(const Corpus& corpus, const WatermarkLexicon& lexicon, const RuleTable& rules,
                  const std::optional<FeatureSpec>& requested = std::nullopt);

// He et al.-style baseline: every token of a designated set becomes the
// set's designated word, whatever its context.
Watermarked apply_unconditional(const Corpus& corpus, const WatermarkLexicon& lexicon,
                                const std::map<int, std::string>& designated);

}  // namespace cater
