#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cater/corpus.hpp"
#include "cater/features.hpp"
#include "cater/lexicon.hpp"

namespace cater {

// Per synonym set: Condition -> occurrence count of each word. Conditions
// keep first-appearance order; every stored condition has total >= 1.
class CondCounts {
 public:
  CondCounts() = default;
  CondCounts(int set_id, std::size_t num_words) : set_id_(set_id), num_words_(num_words) {}

  int set_id() const { return set_id_; }
  std::size_t num_words() const { return num_words_; }
  bool empty() const { return order_.empty(); }
  std::size_t num_conditions() const { return order_.size(); }

  void add(const Condition& condition, std::size_t word_index, std::uint64_t amount = 1);

  const std::vector<Condition>& conditions() const { return order_; }
  const std::vector<std::uint64_t>& counts(const Condition& condition) const;
  const std::vector<std::uint64_t>* find(const Condition& condition) const;
  std::uint64_t total(const Condition& condition) const;
  std::uint64_t grand_total() const;

  // Same set, same multiset of (condition, counts); ignores insertion order.
  bool operator==(const CondCounts& other) const;

 private:
  int set_id_ = 0;
  std::size_t num_words_ = 0;
  std::vector<Condition> order_;
  std::map<Condition, std::vector<std::uint64_t>> counts_;
};

// R x |C| column-stochastic W, prior c over the observed conditions.
struct CondDistribution {
  int set_id = 0;
  std::vector<std::string> words;
  std::vector<Condition> conditions;
  std::vector<std::vector<double>> W;  // W[word][condition]
  std::vector<double> c;
  std::vector<std::uint64_t> support;
  std::vector<std::vector<std::uint64_t>> counts;  // counts[condition][word]

  std::size_t num_words() const { return W.size(); }
  std::size_t num_conditions() const { return conditions.size(); }
};

// One CondCounts per lexicon set, in lexicon order (possibly empty).
std::vector<CondCounts> count_conditions(const Corpus& corpus, const WatermarkLexicon& lexicon,
                                         const FeatureSpec& spec);

CondDistribution to_distribution(const CondCounts& counts,
                                 const std::vector<std::string>& words = {});

CondCounts merge_counts(const CondCounts& a, const CondCounts& b);

// sum_j W[:,j] c[j]: the marginal P(w) the indistinguishable term preserves.
std::vector<double> marginal(const CondDistribution& dist);

// Structural checks on a distribution read from disk.
void validate_distribution(const CondDistribution& dist);

}  // namespace cater
