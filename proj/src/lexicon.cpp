#include "cater/lexicon.hpp"

#include <json.hpp>

#include "cater/error.hpp"

namespace cater {

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

WatermarkLexicon::WatermarkLexicon(std::vector<SynonymSet> sets) : sets_(std::move(sets)) {
  for (std::size_t s = 0; s < sets_.size(); ++s) {
    SynonymSet& set = sets_[s];
    if (set.words.size() < 2) {
      throw Error(ErrorCode::SizeError, "synonym set " + std::to_string(set.id) +
                                            " has " + std::to_string(set.words.size()) +
                                            " word(s); at least 2 required");
    }
    if (!by_id_.emplace(set.id, s).second) {
      throw Error(ErrorCode::FormatError, "duplicate synonym set id " + std::to_string(set.id));
    }
    for (std::size_t w = 0; w < set.words.size(); ++w) {
      set.words[w] = to_lower_ascii(set.words[w]);
      if (set.words[w].empty()) {
        throw Error(ErrorCode::FormatError, "empty word in synonym set " + std::to_string(set.id));
      }
      auto [it, inserted] = by_word_.emplace(set.words[w], WordRef{set.id, w});
      if (!inserted) {
        throw Error(ErrorCode::OverlapError, "word '" + set.words[w] +
                                                 "' appears more than once in the lexicon");
      }
    }
  }
}

const SynonymSet* WatermarkLexicon::find_set(int set_id) const {
  auto it = by_id_.find(set_id);
  return it == by_id_.end() ? nullptr : &sets_[it->second];
}

const SynonymSet& WatermarkLexicon::set(int set_id) const {
  if (const SynonymSet* s = find_set(set_id)) return *s;
  throw Error(ErrorCode::InvalidArgument, "unknown synonym set id " + std::to_string(set_id));
}

std::optional<WordRef> WatermarkLexicon::match(std::string_view surface) const {
  auto it = by_word_.find(to_lower_ascii(surface));
  if (it == by_word_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WatermarkLexicon::word_index(int set_id, std::string_view word) const {
  auto ref = match(word);
  if (!ref || ref->set_id != set_id) return std::nullopt;
  return ref->word_index;
}

WatermarkLexicon load_lexicon(std::string_view json_document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_document);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::FormatError, std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array()) {
    throw Error(ErrorCode::FormatError, "lexicon must be an object with a \"sets\" array");
  }
  std::vector<SynonymSet> sets;
  for (const auto& entry : doc["sets"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_number_integer() ||
        !entry.contains("words") || !entry["words"].is_array()) {
      throw Error(ErrorCode::FormatError,
                  "each lexicon set needs an integer \"id\" and a \"words\" array");
    }
    SynonymSet set;
    set.id = entry["id"].get<int>();
    for (const auto& w : entry["words"]) {
      if (!w.is_string()) {
        throw Error(ErrorCode::FormatError, "lexicon words must be strings");
      }
      set.words.push_back(w.get<std::string>());
    }
    sets.push_back(std::move(set));
  }
  return WatermarkLexicon(std::move(sets));
}

std::string dump_lexicon(const WatermarkLexicon& lexicon) {
  nlohmann::json sets = nlohmann::json::array();
  for (const SynonymSet& s : lexicon.sets()) {
    sets.push_back({{"id", s.id}, {"words", s.words}});
  }
  return nlohmann::json{{"sets", sets}}.dump();
}

}  // namespace cater
