#include "cater/stats.hpp"

#include <cmath>

#include "cater/error.hpp"

namespace cater {

void CondCounts::add(const Condition& condition, std::size_t word_index, std::uint64_t amount) {
  if (word_index >= num_words_) {
    throw Error(ErrorCode::InvalidIndex, "word index " + std::to_string(word_index) +
                                             " outside set " + std::to_string(set_id_));
  }
  if (amount == 0) return;
  auto [it, inserted] = counts_.try_emplace(condition, num_words_, 0);
  if (inserted) order_.push_back(condition);
  it->second[word_index] += amount;
}

const std::vector<std::uint64_t>* CondCounts::find(const Condition& condition) const {
  auto it = counts_.find(condition);
  return it == counts_.end() ? nullptr : &it->second;
}

const std::vector<std::uint64_t>& CondCounts::counts(const Condition& condition) const {
  if (const auto* v = find(condition)) return *v;
  throw Error(ErrorCode::InvalidArgument, "condition '" + condition.key() + "' not counted");
}

std::uint64_t CondCounts::total(const Condition& condition) const {
  std::uint64_t t = 0;
  if (const auto* v = find(condition)) {
    for (auto x : *v) t += x;
  }
  return t;
}

std::uint64_t CondCounts::grand_total() const {
  std::uint64_t t = 0;
  for (const auto& [cond, v] : counts_) {
    for (auto x : v) t += x;
  }
  return t;
}

bool CondCounts::operator==(const CondCounts& other) const {
  return set_id_ == other.set_id_ && num_words_ == other.num_words_ &&
         counts_ == other.counts_;
}

std::vector<CondCounts> count_conditions(const Corpus& corpus, const WatermarkLexicon& lexicon,
                                         const FeatureSpec& spec) {
  validate_feature_spec(spec);
  std::vector<CondCounts> out;
  std::map<int, std::size_t> slot;
  for (const SynonymSet& s : lexicon.sets()) {
    slot[s.id] = out.size();
    out.emplace_back(s.id, s.words.size());
  }
  for (const Sentence& sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      auto ref = lexicon.match(sentence.tokens[i].surface);
      if (!ref) continue;
      out[slot[ref->set_id]].add(extract_condition(sentence, i, spec), ref->word_index);
    }
  }
  return out;
}

CondDistribution to_distribution(const CondCounts& counts, const std::vector<std::string>& words) {
  if (counts.empty()) {
    throw Error(ErrorCode::EmptyCounts,
                "set " + std::to_string(counts.set_id()) + " has no observed units");
  }
  if (!words.empty() && words.size() != counts.num_words()) {
    throw Error(ErrorCode::DimensionMismatch, "word list does not match count width");
  }
  CondDistribution d;
  d.set_id = counts.set_id();
  d.words = words;
  d.conditions = counts.conditions();
  const std::size_t R = counts.num_words();
  const std::size_t C = d.conditions.size();
  d.W.assign(R, std::vector<double>(C, 0.0));
  d.c.assign(C, 0.0);
  d.support.assign(C, 0);
  const double grand = static_cast<double>(counts.grand_total());
  for (std::size_t j = 0; j < C; ++j) {
    const auto& v = counts.counts(d.conditions[j]);
    d.counts.push_back(v);
    const std::uint64_t total = counts.total(d.conditions[j]);
    d.support[j] = total;
    for (std::size_t r = 0; r < R; ++r) {
      d.W[r][j] = static_cast<double>(v[r]) / static_cast<double>(total);
    }
    d.c[j] = static_cast<double>(total) / grand;
  }
  return d;
}

CondCounts merge_counts(const CondCounts& a, const CondCounts& b) {
  if (a.set_id() != b.set_id() || a.num_words() != b.num_words()) {
    throw Error(ErrorCode::SetMismatch, "cannot merge counts of set " +
                                            std::to_string(a.set_id()) + " with set " +
                                            std::to_string(b.set_id()));
  }
  CondCounts out = a;
  for (const Condition& cond : b.conditions()) {
    const auto& v = b.counts(cond);
    for (std::size_t r = 0; r < v.size(); ++r) out.add(cond, r, v[r]);
  }
  return out;
}

std::vector<double> marginal(const CondDistribution& dist) {
  std::vector<double> p(dist.num_words(), 0.0);
  for (std::size_t r = 0; r < dist.num_words(); ++r) {
    for (std::size_t j = 0; j < dist.num_conditions(); ++j) p[r] += dist.W[r][j] * dist.c[j];
  }
  return p;
}

void validate_distribution(const CondDistribution& dist) {
  const std::size_t R = dist.W.size();
  const std::size_t C = dist.conditions.size();
  if (R < 2) throw Error(ErrorCode::DimensionMismatch, "distribution needs at least 2 words");
  if (C == 0) throw Error(ErrorCode::EmptyCounts, "distribution has no conditions");
  if (dist.c.size() != C || (!dist.words.empty() && dist.words.size() != R)) {
    throw Error(ErrorCode::DimensionMismatch, "W, c and condition list disagree in size");
  }
  double c_sum = 0.0;
  for (std::size_t j = 0; j < C; ++j) {
    if (!(dist.c[j] > 0.0)) {
      throw Error(ErrorCode::NotNormalized, "condition prior must be positive");
    }
    c_sum += dist.c[j];
    double col = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      if (dist.W[r].size() != C) {
        throw Error(ErrorCode::DimensionMismatch, "ragged W matrix");
      }
      if (dist.W[r][j] < 0.0) throw Error(ErrorCode::NotNormalized, "negative probability in W");
      col += dist.W[r][j];
    }
    if (std::abs(col - 1.0) > 1e-9) {
      throw Error(ErrorCode::NotNormalized,
                  "column '" + dist.conditions[j].key() + "' of W does not sum to 1");
    }
  }
  if (std::abs(c_sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "condition prior does not sum to 1");
  }
}

}  // namespace cater
