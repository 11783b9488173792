#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cater/corpus.hpp"
#include "cater/error.hpp"
#include "cater/random.hpp"

namespace testing {

struct Tok {
  std::string surface;
  std::string pos;
  int head;
  std::string deprel;
};

inline cater::Sentence sentence(const std::vector<Tok>& toks) {
  cater::Sentence s;
  int i = 1;
  for (const Tok& t : toks) s.tokens.push_back({i++, t.surface, t.pos, t.head, t.deprel});
  return s;
}

// Flat sentence: every token hangs off the last one, which is the root.
inline cater::Sentence flat(const std::vector<std::pair<std::string, std::string>>& words) {
  cater::Sentence s;
  const int n = static_cast<int>(words.size());
  for (int i = 0; i < n; ++i) {
    const bool last = i + 1 == n;
    s.tokens.push_back({i + 1, words[i].first, words[i].second, last ? 0 : n,
                        last ? "root" : "dep"});
  }
  return s;
}

inline cater::Corpus corpus(std::vector<cater::Sentence> sentences) {
  cater::Corpus c;
  c.sentences = std::move(sentences);
  return c;
}

// Random valid sentence: a random tree over n tokens with labels drawn from
// small pools.
inline cater::Sentence random_sentence(cater::Rng& rng, std::size_t n) {
  static const std::vector<std::string> pos = {"NOUN", "VERB", "DET", "ADJ", "PRON", "ADP"};
  static const std::vector<std::string> rel = {"nsubj", "obj", "det", "amod", "obl", "case"};
  static const std::vector<std::string> words = {"region", "area", "help", "aid", "we",
                                                 "the",    "big",  "saw",  "it",  "of"};
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<int> head(n, 0);
  for (std::size_t i = 1; i < n; ++i) head[order[i]] = static_cast<int>(order[rng.below(i)]) + 1;
  cater::Sentence s;
  for (std::size_t i = 0; i < n; ++i) {
    s.tokens.push_back({static_cast<int>(i) + 1, words[rng.below(words.size())],
                        pos[rng.below(pos.size())], head[i],
                        head[i] == 0 ? "root" : rel[rng.below(rel.size())]});
  }
  return s;
}

template <typename F>
cater::ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const cater::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected a cater::Error");
}

}  // namespace testing
