#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cater {

struct SynonymSet {
  int id = 0;
  std::vector<std::string> words;  // lowercase, pairwise distinct, size >= 2
};

struct WordRef {
  int set_id = 0;
  std::size_t word_index = 0;

  bool operator==(const WordRef&) const = default;
};

std::string to_lower_ascii(std::string_view s);

// Groups of interchangeable words. Word order inside a set fixes the row
// order of every per-set matrix downstream.
class WatermarkLexicon {
 public:
  WatermarkLexicon() = default;
  // Lowercases words, then checks sizes, duplicate ids and cross-set overlap.
  explicit WatermarkLexicon(std::vector<SynonymSet> sets);

  const std::vector<SynonymSet>& sets() const { return sets_; }
  const SynonymSet* find_set(int set_id) const;
  const SynonymSet& set(int set_id) const;  // throws InvalidArgument

  std::optional<WordRef> match(std::string_view surface) const;
  std::optional<std::size_t> word_index(int set_id, std::string_view word) const;

 private:
  std::vector<SynonymSet> sets_;
  std::unordered_map<std::string, WordRef> by_word_;
  std::unordered_map<int, std::size_t> by_id_;
};

// {"sets":[{"id":0,"words":["help","aid"]}, ...]}
WatermarkLexicon load_lexicon(std::string_view json_document);
std::string dump_lexicon(const WatermarkLexicon& lexicon);

inline std::optional<WordRef> match_token(const WatermarkLexicon& lexicon,
                                          std::string_view surface) {
  return lexicon.match(surface);
}

}  // namespace cater
