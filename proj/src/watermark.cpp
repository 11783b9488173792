#include "cater/watermark.hpp"

#include <cctype>

#include "cater/error.hpp"
#include "cater/features.hpp"

namespace cater {

ApplicationCounters& ApplicationCounters::operator+=(const ApplicationCounters& o) {
  candidates_seen += o.candidates_seen;
  substituted += o.substituted;
  unchanged_by_rule += o.unchanged_by_rule;
  fallback_identity += o.fallback_identity;
  return *this;
}

void ApplicationLog::merge(const ApplicationLog& other) {
  totals += other.totals;
  for (const auto& [id, c] : other.per_set) per_set[id] += c;
}

std::string match_case(std::string_view original, std::string_view word) {
  int letters = 0;
  bool any_lower = false;
  for (char ch : original) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isalpha(u)) {
      ++letters;
      if (std::islower(u)) any_lower = true;
    }
  }
  std::string out = to_lower_ascii(word);
  if (letters >= 2 && !any_lower) {
    for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  } else if (!original.empty() && std::isupper(static_cast<unsigned char>(original.front())) &&
             !out.empty()) {
    out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  }
  return out;
}

namespace {

void record(ApplicationLog& log, int set_id, std::uint64_t ApplicationCounters::*field) {
  ++log.totals.candidates_seen;
  ++(log.totals.*field);
  auto& per = log.per_set[set_id];
  ++per.candidates_seen;
  ++(per.*field);
}

}  // namespace

Watermarked apply(const Corpus& corpus, const WatermarkLexicon& lexicon, const RuleTable& rules,
                  const std::optional<FeatureSpec>& requested) {
  if (requested && !requested->same_extraction(rules.feature)) {
    throw Error(ErrorCode::FeatureMismatch,
                "rules were built for " + std::string(feature_kind_name(rules.feature.kind)) +
                    " order " + std::to_string(rules.feature.order) + ", requested " +
                    std::string(feature_kind_name(requested->kind)) + " order " +
                    std::to_string(requested->order));
  }
  for (const SetRules& s : rules.sets) {
    if (!lexicon.find_set(s.set_id)) {
      throw Error(ErrorCode::InvalidDesignation, "unknown synonym set " + std::to_string(s.set_id));
    }
    for (const auto& [cond, word] : s.rules) {
      if (!lexicon.word_index(s.set_id, word)) {
        throw Error(ErrorCode::InvalidDesignation,
                    "rule word '" + word + "' is not in synonym set " + std::to_string(s.set_id));
      }
    }
  }

  Watermarked out{corpus, {}};
  for (Sentence& sentence : out.corpus.sentences) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      Token& token = sentence.tokens[i];
      const auto ref = lexicon.match(token.surface);
      if (!ref) continue;
      const SetRules* set_rules = rules.find(ref->set_id);
      if (!set_rules) continue;
      const Condition cond = extract_condition(sentence, i, rules.feature);
      auto it = set_rules->rules.find(cond);
      if (it == set_rules->rules.end()) {
        record(out.log, ref->set_id, &ApplicationCounters::fallback_identity);
        continue;
      }
      if (to_lower_ascii(token.surface) == it->second) {
        record(out.log, ref->set_id, &ApplicationCounters::unchanged_by_rule);
        continue;
      }
      token.surface = match_case(token.surface, it->second);
      record(out.log, ref->set_id, &ApplicationCounters::substituted);
    }
  }
  return out;
}

Watermarked apply_unconditional(const Corpus& corpus, const WatermarkLexicon& lexicon,
                                const std::map<int, std::string>& designated) {
  std::map<int, std::string> normalized;
  for (const auto& [set_id, word] : designated) {
    if (!lexicon.find_set(set_id)) {
      throw Error(ErrorCode::InvalidDesignation, "unknown synonym set " + std::to_string(set_id));
    }
    const std::string lower = to_lower_ascii(word);
    if (!lexicon.word_index(set_id, lower)) {
      throw Error(ErrorCode::InvalidDesignation,
                  "designated word '" + word + "' is not in synonym set " + std::to_string(set_id));
    }
    normalized.emplace(set_id, lower);
  }

  Watermarked out{corpus, {}};
  for (Sentence& sentence : out.corpus.sentences) {
    for (Token& token : sentence.tokens) {
      const auto ref = lexicon.match(token.surface);
      if (!ref) continue;
      auto it = normalized.find(ref->set_id);
      if (it == normalized.end()) continue;
      if (to_lower_ascii(token.surface) == it->second) {
        record(out.log, ref->set_id, &ApplicationCounters::unchanged_by_rule);
        continue;
      }
      token.surface = match_case(token.surface, it->second);
      record(out.log, ref->set_id, &ApplicationCounters::substituted);
    }
  }
  return out;
}

}  // namespace cater
