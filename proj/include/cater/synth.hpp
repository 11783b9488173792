#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cater/corpus.hpp"
#include "cater/features.hpp"
#include "cater/lexicon.hpp"
#include "cater/random.hpp"
#include "cater/stats.hpp"

namespace cater {

// Generator parameters with known ground truth. Each sentence carries
// exactly one candidate unit: a set is drawn from set_weights, a condition
// from condition_priors, a word from word_given_condition, and the sentence
// is built so the unit's extracted condition is exactly the drawn one.
struct SynthSpec {
  WatermarkLexicon lexicon;
  FeatureSpec feature;
  std::vector<std::pair<Condition, double>> condition_priors;
  // Missing (set, condition) vectors default to uniform over the set.
  std::map<int, std::map<Condition, std::vector<double>>> word_given_condition;
  // Empty means uniform over the lexicon's sets.
  std::map<int, double> set_weights;
  std::vector<std::string> filler_vocab;
  std::size_t min_tokens = 6;
  std::size_t max_tokens = 12;
  std::uint64_t num_sentences = 0;
  std::uint64_t seed = 0;
  std::string target_pos = "NOUN";
  std::string filler_pos = "X";
};

struct SynthResult {
  Corpus corpus;
  std::vector<CondCounts> realized;  // count_conditions over the output
};

// Throws InfeasibleSpec when a requested condition cannot be realized
// (e.g. a real POS label beyond a "[none]" slot, or "[none]" in a DEP chain
// that has not reached the root).
void validate_synth_spec(const SynthSpec& spec);

SynthResult generate(const SynthSpec& spec);

SynthSpec load_synth_spec(std::string_view json_document);
std::string dump_synth_spec(const SynthSpec& spec);


}  // namespace cater
