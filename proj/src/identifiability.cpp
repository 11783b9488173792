#include "cater/identifiability.hpp"

#include <algorithm>
#include <cmath>

#include "cater/error.hpp"
#include "cater/stats.hpp"

namespace cater {

SparsityReport sparse_support_bound(std::uint64_t feature_size, int order, std::uint64_t sample_tokens,
                          std::uint64_t threshold) {
  if (feature_size < 1 || order < 1 || threshold < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "label set size, order and support threshold must be >= 1");
  }
  SparsityReport r;
  r.feature_size = feature_size;
  r.order = order;
  r.sample_tokens = sample_tokens;
  r.threshold = threshold;
  r.space_size = checked_pow(feature_size, static_cast<std::uint64_t>(order));
  r.precondition_holds = r.space_size > sample_tokens;
  const double raw = static_cast<double>(r.space_size) -
                     static_cast<double>(sample_tokens) / static_cast<double>(threshold + 1);
  r.bound = std::max(0.0, raw);
  return r;
}

std::uint64_t SupportCensus::observed_t(std::uint64_t m) const {
  std::uint64_t above = 0;
  for (const auto& [cond, s] : support) {
    if (s > m) ++above;
  }
  return above >= space_size ? 0 : space_size - above;
}

SupportCensus support_census(const Corpus& corpus, const WatermarkLexicon& lexicon,
                             const FeatureSpec& spec) {
  SupportCensus census;
  census.space_size = condition_space_size(spec);
  for (const Sentence& sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      if (!lexicon.match(sentence.tokens[i].surface)) continue;
      ++census.support[extract_condition(sentence, i, spec)];
      ++census.units;
    }
  }
  return census;
}

double imbalance_prob(const std::vector<double>& column, std::uint64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "support m must be >= 1");
  if (column.empty()) throw Error(ErrorCode::NotNormalized, "empty probability vector");
  double sum = 0.0;
  for (double v : column) {
    if (!(v >= 0.0)) throw Error(ErrorCode::NotNormalized, "negative or NaN probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "probabilities sum to " + std::to_string(sum));
  }
  double out = 0.0;
  for (double v : column) out += std::pow(v, static_cast<double>(m));
  return std::min(out, 1.0);
}

SuspectReport suspected_entries(const Corpus& sample, const WatermarkLexicon& lexicon,
                                const FeatureSpec& spec, std::uint64_t min_support) {
  const std::uint64_t floor_support = std::max<std::uint64_t>(min_support, 1);
  SuspectReport report;
  for (const CondCounts& counts : count_conditions(sample, lexicon, spec)) {
    const SynonymSet& set = lexicon.set(counts.set_id());
    for (const Condition& cond : counts.conditions()) {
      const auto& v = counts.counts(cond);
      std::uint64_t total = 0;
      std::size_t distinct = 0;
      std::size_t only = 0;
      for (std::size_t r = 0; r < v.size(); ++r) {
        total += v[r];
        if (v[r] > 0) {
          ++distinct;
          only = r;
        }
      }
      if (total < floor_support || distinct != 1) continue;
      report.entries.push_back({counts.set_id(), cond, set.words[only], total});
      ++report.per_set[counts.set_id()];
      ++report.suspected;
    }
  }
  return report;
}

std::uint64_t combinatorial_upper_bound(std::uint64_t num_sets, std::uint64_t feature_size,
                                        int order) {
  if (num_sets < 1 || feature_size < 1 || order < 1) {
    throw Error(ErrorCode::InvalidArgument, "inputs must be >= 1");
  }
  return checked_mul(num_sets, checked_pow(feature_size, static_cast<std::uint64_t>(order)));
}

}  // namespace cater
