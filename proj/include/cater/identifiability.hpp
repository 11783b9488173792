#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cater/corpus.hpp"
#include "cater/features.hpp"
#include "cater/lexicon.hpp"

namespace cater {

struct SparsityReport {
  std::uint64_t feature_size = 0;
  int order = 0;
  std::uint64_t sample_tokens = 0;
  std::uint64_t threshold = 0;
  std::uint64_t space_size = 0;  // |F|^K
  double bound = 0.0;            // max(0, |F|^K - N/(m+1))
  bool precondition_holds = false;  // |F|^K > N
  std::optional<std::uint64_t> observed_t;
};

// Lower bound on the number of conditions with at most `threshold` support
// samples among `sample_tokens` units.
SparsityReport sparse_support_bound(std::uint64_t feature_size, int order, std::uint64_t sample_tokens,
                          std::uint64_t threshold);

// Support of each condition pooled over all synonym sets.
struct SupportCensus {
  std::map<Condition, std::uint64_t> support;
  std::uint64_t units = 0;       // N
  std::uint64_t space_size = 0;  // |F|^K

  // Conditions of the full space with support <= m, unobserved ones counted
  // as support 0: |F|^K - #{observed with support > m}, floored at 0.
  std::uint64_t observed_t(std::uint64_t m) const;
};

SupportCensus support_census(const Corpus& corpus, const WatermarkLexicon& lexicon,
                             const FeatureSpec& spec);

// sum_i p_i^m; throws NotNormalized unless p is a probability vector.
double imbalance_prob(const std::vector<double>& column, std::uint64_t m);

struct SuspectedEntry {
  int set_id = 0;
  Condition condition;
  std::string word;  // the single word observed under the condition
  std::uint64_t support = 0;
};

struct SuspectReport {
  std::uint64_t suspected = 0;
  std::map<int, std::uint64_t> per_set;
  std::vector<SuspectedEntry> entries;
};

// (set, condition) pairs with support >= min_support (at least 1) where only
// one word of the set was observed.
SuspectReport suspected_entries(const Corpus& sample, const WatermarkLexicon& lexicon,
                                const FeatureSpec& spec, std::uint64_t min_support);

// num_sets * |F|^K.
std::uint64_t combinatorial_upper_bound(std::uint64_t num_sets, std::uint64_t feature_size,
                                        int order);

}  // namespace cater
