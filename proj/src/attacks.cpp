#include "cater/attacks.hpp"

#include <algorithm>
#include <map>

#include "cater/error.hpp"
#include "cater/identifiability.hpp"

namespace cater {

std::map<std::string, std::uint64_t> word_counts(const Corpus& corpus) {
  std::map<std::string, std::uint64_t> counts;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) ++counts[to_lower_ascii(t.surface)];
  }
  return counts;
}

namespace {

void add_top(const std::map<std::string, std::uint64_t>& counts, std::size_t top_n,
             std::set<std::string>& out) {
  std::vector<std::pair<std::string, std::uint64_t>> v(counts.begin(), counts.end());
  std::stable_sort(v.begin(), v.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (std::size_t i = 0; i < v.size() && i < top_n; ++i) out.insert(v[i].first);
}

}  // namespace

std::set<std::string> top_vocabulary(const Corpus& reference, const Corpus& suspect,
                                     std::size_t top_n) {
  std::set<std::string> vocab;
  add_top(word_counts(reference), top_n, vocab);
  add_top(word_counts(suspect), top_n, vocab);
  return vocab;
}

FrequencyAttack frequency_attack(const Corpus& reference, const Corpus& suspect,
                                 const std::set<std::string>& vocab) {
  if (vocab.empty()) throw Error(ErrorCode::InvalidArgument, "vocabulary must be nonempty");
  const auto ref = word_counts(reference);
  const auto sus = word_counts(suspect);
  std::vector<WordRatio> ratios;
  for (const std::string& raw : vocab) {
    const std::string w = to_lower_ascii(raw);
    WordRatio r;
    r.word = w;
    if (auto it = ref.find(w); it != ref.end()) r.reference_count = it->second;
    if (auto it = sus.find(w); it != sus.end()) r.suspect_count = it->second;
    r.ratio = static_cast<double>(r.reference_count + 1) /
              static_cast<double>(r.suspect_count + 1);
    ratios.push_back(std::move(r));
  }

  FrequencyAttack out;
  out.decreased.direction = RatioDirection::Decreased;
  out.decreased.entries = ratios;
  std::stable_sort(out.decreased.entries.begin(), out.decreased.entries.end(),
                   [](const WordRatio& a, const WordRatio& b) { return a.ratio > b.ratio; });
  out.increased.direction = RatioDirection::Increased;
  out.increased.entries = std::move(ratios);
  std::stable_sort(out.increased.entries.begin(), out.increased.entries.end(),
                   [](const WordRatio& a, const WordRatio& b) { return a.ratio < b.ratio; });
  return out;
}

RuleSet leakage_attack(const Corpus& suspect, const WatermarkLexicon& lexicon,
                       const FeatureSpec& spec, std::uint64_t min_support) {
  RuleSet out;
  for (const SuspectedEntry& e : suspected_entries(suspect, lexicon, spec, min_support).entries) {
    out.insert({e.set_id, e.condition, e.word});
  }
  return out;
}

RuleSet rule_triples(const RuleTable& rules) {
  RuleSet out;
  for (const SetRules& s : rules.sets) {
    for (const auto& [cond, word] : s.rules) out.insert({s.set_id, cond, word});
  }
  return out;
}

LeakageResult score_leakage(const RuleSet& suspected, const RuleSet& true_rules) {
  LeakageResult r;
  r.suspected = suspected;
  r.true_rules = true_rules;
  for (const RuleTriple& t : suspected) {
    if (true_rules.count(t)) ++r.hits;
  }
  const double hits = static_cast<double>(r.hits);
  r.precision = suspected.empty() ? 0.0 : hits / static_cast<double>(suspected.size());
  r.recall = true_rules.empty() ? 0.0 : hits / static_cast<double>(true_rules.size());
  r.confusion_factor = static_cast<double>(suspected.size()) / std::max(1.0, hits);
  return r;
}

}  // namespace cater
