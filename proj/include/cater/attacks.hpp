#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cater/corpus.hpp"
#include "cater/features.hpp"
#include "cater/lexicon.hpp"
#include "cater/rules.hpp"

namespace cater {

enum class RatioDirection { Decreased, Increased };

struct WordRatio {
  std::string word;
  double ratio = 1.0;  // (count_reference + 1) / (count_suspect + 1)
  std::uint64_t reference_count = 0;
  std::uint64_t suspect_count = 0;
};

struct SuspicionRanking {
  RatioDirection direction = RatioDirection::Decreased;
  std::vector<WordRatio> entries;
};

struct FrequencyAttack {
  SuspicionRanking decreased;  // ratio descending: words the suspect lost
  SuspicionRanking increased;  // ratio ascending: words the suspect gained
};

// Lowercased surface-form counts.
std::map<std::string, std::uint64_t> word_counts(const Corpus& corpus);

// Union of the `top_n` most frequent words of each corpus (ties by word).
std::set<std::string> top_vocabulary(const Corpus& reference, const Corpus& suspect,
                                     std::size_t top_n);

FrequencyAttack frequency_attack(const Corpus& reference, const Corpus& suspect,
                                 const std::set<std::string>& vocab);

struct RuleTriple {
  int set_id = 0;
  Condition condition;
  std::string word;

  auto operator<=>(const RuleTriple&) const = default;
  bool operator==(const RuleTriple&) const = default;
};

using RuleSet = std::set<RuleTriple>;

// The attacker knows the lexicon and the feature spec and flags every sparse
// entry (one word only, support >= min_support) as a rule.
RuleSet leakage_attack(const Corpus& suspect, const WatermarkLexicon& lexicon,
                       const FeatureSpec& spec, std::uint64_t min_support);

RuleSet rule_triples(const RuleTable& rules);

struct LeakageResult {
  RuleSet suspected;
  RuleSet true_rules;
  std::uint64_t hits = 0;  // |suspected ∩ true_rules|
  double precision = 0.0;
  double recall = 0.0;
  double confusion_factor = 0.0;  // |suspected| / max(1, hits)
};

LeakageResult score_leakage(const RuleSet& suspected, const RuleSet& true_rules);

}  // namespace cater
