#include "cater/synth.hpp"

#include <cmath>

#include <json.hpp>

#include "cater/error.hpp"

namespace cater {

namespace {

bool is_none(const std::string& label) { return label == kNoneLabel; }

// POS layout: how many context tokens sit on each side of the target and
// whether that side is closed by the sentence boundary.
struct PosLayout {
  std::vector<std::string> left;   // near to far
  std::vector<std::string> right;  // near to far
  bool left_closed = false;
  bool right_closed = false;
};

PosLayout pos_layout(const Condition& cond, int order) {
  const std::vector<int> offsets = pos_offsets(order);
  std::vector<std::string> left_far_to_near;
  std::vector<std::string> right_near_to_far;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    (offsets[i] < 0 ? left_far_to_near : right_near_to_far).push_back(cond.labels[i]);
  }
  PosLayout layout;
  auto read_side = [&](const std::vector<std::string>& near_to_far, std::vector<std::string>& out,
                       bool& closed) {
    for (const std::string& label : near_to_far) {
      if (is_none(label)) {
        closed = true;
      } else if (closed) {
        throw Error(ErrorCode::InfeasibleSpec,
                    "condition '" + cond.key() + "' has a label beyond a [none] boundary");
      } else {
        out.push_back(label);
      }
    }
  };
  std::vector<std::string> left_near_to_far(left_far_to_near.rbegin(), left_far_to_near.rend());
  read_side(left_near_to_far, layout.left, layout.left_closed);
  read_side(right_near_to_far, layout.right, layout.right_closed);
  return layout;
}

// DEP layout: deprels of the chain target -> ... -> top, and whether the top
// of the chain is itself the root word.
struct DepLayout {
  std::vector<std::string> chain;
  bool top_is_root = false;
};

DepLayout dep_layout(const Condition& cond) {
  DepLayout layout;
  bool ended = false;
  for (const std::string& label : cond.labels) {
    if (ended) {
      if (!is_none(label)) {
        throw Error(ErrorCode::InfeasibleSpec,
                    "condition '" + cond.key() + "' continues past the root");
      }
      continue;
    }
    if (is_none(label)) {
      if (layout.chain.empty() || layout.chain.back() != "root") {
        throw Error(ErrorCode::InfeasibleSpec,
                    "condition '" + cond.key() + "' has [none] before reaching a root arc");
      }
      ended = true;
      continue;
    }
    layout.chain.push_back(label);
    if (label == "root") ended = true;
  }
  layout.top_is_root = !layout.chain.empty() && layout.chain.back() == "root";
  return layout;
}

Token make_token(std::string surface, std::string pos, std::string deprel) {
  Token t;
  t.surface = std::move(surface);
  t.pos = std::move(pos);
  t.deprel = std::move(deprel);
  return t;
}

}  // namespace

void validate_synth_spec(const SynthSpec& spec) {
  validate_feature_spec(spec.feature);
  if (spec.lexicon.sets().empty()) {
    throw Error(ErrorCode::InfeasibleSpec, "synth spec needs at least one synonym set");
  }
  if (spec.filler_vocab.empty()) {
    throw Error(ErrorCode::InfeasibleSpec, "filler vocabulary must be nonempty");
  }
  for (const std::string& w : spec.filler_vocab) {
    if (w.empty() || spec.lexicon.match(w)) {
      throw Error(ErrorCode::InfeasibleSpec,
                  "filler word '" + w + "' is empty or belongs to the lexicon");
    }
  }
  if (spec.min_tokens < 1 || spec.min_tokens > spec.max_tokens) {
    throw Error(ErrorCode::InfeasibleSpec, "tokens_per_sentence must satisfy 1 <= min <= max");
  }
  if (spec.condition_priors.empty()) {
    throw Error(ErrorCode::InfeasibleSpec, "condition_priors must be nonempty");
  }
  double total = 0.0;
  for (const auto& [cond, p] : spec.condition_priors) {
    if (static_cast<int>(cond.labels.size()) != spec.feature.order) {
      throw Error(ErrorCode::InfeasibleSpec, "condition '" + cond.key() +
                                                 "' does not have " +
                                                 std::to_string(spec.feature.order) + " labels");
    }
    if (!(p >= 0.0)) throw Error(ErrorCode::NotNormalized, "negative condition prior");
    total += p;
    if (spec.feature.kind == FeatureKind::Pos) {
      pos_layout(cond, spec.feature.order);
    } else {
      dep_layout(cond);
    }
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "condition priors sum to " + std::to_string(total));
  }
  for (const auto& [set_id, per_cond] : spec.word_given_condition) {
    const SynonymSet& set = spec.lexicon.set(set_id);
    for (const auto& [cond, v] : per_cond) {
      if (v.size() != set.words.size()) {
        throw Error(ErrorCode::DimensionMismatch, "word vector for set " +
                                                      std::to_string(set_id) + " under '" +
                                                      cond.key() + "' has the wrong length");
      }
      double s = 0.0;
      for (double x : v) {
        if (!(x >= 0.0)) throw Error(ErrorCode::NotNormalized, "negative word probability");
        s += x;
      }
      if (std::abs(s - 1.0) > 1e-9) {
        throw Error(ErrorCode::NotNormalized, "word vector for set " + std::to_string(set_id) +
                                                  " under '" + cond.key() +
                                                  "' does not sum to 1");
      }
    }
  }
  for (const auto& [set_id, w] : spec.set_weights) {
    spec.lexicon.set(set_id);
    if (!(w >= 0.0)) throw Error(ErrorCode::NotNormalized, "negative set weight");
  }
}

SynthResult generate(const SynthSpec& spec) {
  validate_synth_spec(spec);
  Rng rng(spec.seed);

  const auto& sets = spec.lexicon.sets();
  std::vector<double> set_w;
  for (const SynonymSet& s : sets) {
    if (spec.set_weights.empty()) {
      set_w.push_back(1.0);
    } else {
      auto it = spec.set_weights.find(s.id);
      set_w.push_back(it == spec.set_weights.end() ? 0.0 : it->second);
    }
  }
  const std::vector<double> set_cdf = cumulative(set_w);
  if (!(set_cdf.back() > 0.0)) {
    throw Error(ErrorCode::InfeasibleSpec, "set weights are all zero");
  }
  std::vector<double> prior_w;
  for (const auto& [cond, p] : spec.condition_priors) prior_w.push_back(p);
  const std::vector<double> prior_cdf = cumulative(prior_w);

  // Word CDFs per (set slot, condition slot); uniform when unspecified.
  std::vector<std::vector<std::vector<double>>> word_cdf(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto per_set = spec.word_given_condition.find(sets[s].id);
    for (const auto& [cond, p] : spec.condition_priors) {
      std::vector<double> v(sets[s].words.size(), 1.0);
      if (per_set != spec.word_given_condition.end()) {
        if (auto it = per_set->second.find(cond); it != per_set->second.end()) v = it->second;
      }
      word_cdf[s].push_back(cumulative(v));
    }
  }

  auto filler = [&]() -> const std::string& {
    return spec.filler_vocab[rng.below(spec.filler_vocab.size())];
  };

  Corpus corpus;
  corpus.source = "synth:seed=" + std::to_string(spec.seed);
  corpus.sentences.reserve(spec.num_sentences);
  for (std::uint64_t n = 0; n < spec.num_sentences; ++n) {
    const std::size_t s = rng.categorical(set_cdf);
    const std::size_t ci = rng.categorical(prior_cdf);
    const Condition& cond = spec.condition_priors[ci].first;
    const std::size_t wi = rng.categorical(word_cdf[s][ci]);
    const std::string& word = sets[s].words[wi];
    const std::size_t length =
        spec.min_tokens + rng.below(spec.max_tokens - spec.min_tokens + 1);

    Sentence sentence;
    std::size_t target = 0;
    std::size_t root = 0;
    if (spec.feature.kind == FeatureKind::Pos) {
      const PosLayout layout = pos_layout(cond, spec.feature.order);
      const std::size_t required = layout.left.size() + 1 + layout.right.size();
      std::size_t extra = length > required ? length - required : 0;
      std::size_t extra_left = 0;
      if (layout.left_closed && layout.right_closed) {
        extra = 0;
      } else if (layout.left_closed) {
        extra_left = 0;
      } else if (layout.right_closed) {
        extra_left = extra;
      } else {
        extra_left = rng.below(extra + 1);
      }
      const std::size_t extra_right = extra - extra_left;
      for (std::size_t i = 0; i < extra_left; ++i) {
        sentence.tokens.push_back(make_token(filler(), spec.filler_pos, "dep"));
      }
      for (auto it = layout.left.rbegin(); it != layout.left.rend(); ++it) {
        sentence.tokens.push_back(make_token(filler(), *it, "dep"));
      }
      target = sentence.tokens.size();
      sentence.tokens.push_back(make_token(word, spec.target_pos, "root"));
      for (const std::string& label : layout.right) {
        sentence.tokens.push_back(make_token(filler(), label, "dep"));
      }
      for (std::size_t i = 0; i < extra_right; ++i) {
        sentence.tokens.push_back(make_token(filler(), spec.filler_pos, "dep"));
      }
      root = target;
      for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        sentence.tokens[i].index = static_cast<int>(i) + 1;
        sentence.tokens[i].head = i == root ? 0 : static_cast<int>(root) + 1;
      }
    } else {
      const DepLayout layout = dep_layout(cond);
      const std::size_t required = layout.chain.size() + (layout.top_is_root ? 0 : 1);
      const std::size_t extra = length > required ? length - required : 0;
      const std::size_t extra_left = rng.below(extra + 1);
      const std::size_t extra_right = extra - extra_left;
      for (std::size_t i = 0; i < extra_left; ++i) {
        sentence.tokens.push_back(make_token(filler(), spec.filler_pos, "dep"));
      }
      target = sentence.tokens.size();
      for (std::size_t k = 0; k < layout.chain.size(); ++k) {
        sentence.tokens.push_back(make_token(k == 0 ? word : filler(),
                                             k == 0 ? spec.target_pos : spec.filler_pos,
                                             layout.chain[k]));
      }
      if (!layout.top_is_root) {
        sentence.tokens.push_back(make_token(filler(), spec.filler_pos, "root"));
      }
      root = sentence.tokens.size() - 1;
      for (std::size_t i = 0; i < extra_right; ++i) {
        sentence.tokens.push_back(make_token(filler(), spec.filler_pos, "dep"));
      }
      const std::size_t chain_end = target + layout.chain.size();
      for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        Token& t = sentence.tokens[i];
        t.index = static_cast<int>(i) + 1;
        if (i == root) {
          t.head = 0;
        } else if (i >= target && i + 1 < chain_end) {
          t.head = static_cast<int>(i) + 2;  // next link of the chain
        } else {
          t.head = static_cast<int>(root) + 1;
        }
      }
    }
    corpus.sentences.push_back(std::move(sentence));
  }

  SynthResult result;
  result.realized = count_conditions(corpus, spec.lexicon, spec.feature);
  result.corpus = std::move(corpus);
  return result;
}

SynthSpec load_synth_spec(std::string_view json_document) {
  // Ordered, so condition priors keep their listed order (it drives sampling).
  using json = nlohmann::ordered_json;
  json doc;
  try {
    doc = json::parse(json_document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::FormatError, std::string("synth spec is not valid JSON: ") + e.what());
  }
  try {
    SynthSpec spec;
    spec.lexicon = load_lexicon(doc.at("lexicon").dump());
    const json& f = doc.at("feature");
    spec.feature.kind = parse_feature_kind(f.at("kind").get<std::string>());
    spec.feature.order = f.at("order").get<int>();
    spec.feature.labelset_size = f.value("labelset_size", std::uint64_t{36});
    for (const auto& [key, p] : doc.at("condition_priors").items()) {
      spec.condition_priors.emplace_back(Condition::from_key(key), p.get<double>());
    }
    if (doc.contains("word_given_condition")) {
      for (const auto& [set_key, per_cond] : doc["word_given_condition"].items()) {
        auto& slot = spec.word_given_condition[std::stoi(set_key)];
        for (const auto& [cond_key, v] : per_cond.items()) {
          slot[Condition::from_key(cond_key)] = v.get<std::vector<double>>();
        }
      }
    }
    if (doc.contains("set_weights")) {
      for (const auto& [set_key, w] : doc["set_weights"].items()) {
        spec.set_weights[std::stoi(set_key)] = w.get<double>();
      }
    }
    spec.filler_vocab = doc.at("filler_vocab").get<std::vector<std::string>>();
    if (doc.contains("tokens_per_sentence")) {
      const auto range = doc["tokens_per_sentence"].get<std::vector<std::size_t>>();
      if (range.size() != 2) {
        throw Error(ErrorCode::FormatError, "tokens_per_sentence must be [min, max]");
      }
      spec.min_tokens = range[0];
      spec.max_tokens = range[1];
    }
    spec.num_sentences = doc.at("num_sentences").get<std::uint64_t>();
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.target_pos = doc.value("target_pos", std::string("NOUN"));
    spec.filler_pos = doc.value("filler_pos", std::string("X"));
    validate_synth_spec(spec);
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed synth spec: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::FormatError, "synth spec set ids must be integers");
  }
}

std::string dump_synth_spec(const SynthSpec& spec) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["lexicon"] = ordered_json::parse(dump_lexicon(spec.lexicon));
  doc["feature"] = {{"kind", feature_kind_name(spec.feature.kind)},
                    {"order", spec.feature.order},
                    {"labelset_size", spec.feature.labelset_size}};
  ordered_json priors = ordered_json::object();
  for (const auto& [cond, p] : spec.condition_priors) priors[cond.key()] = p;
  doc["condition_priors"] = priors;
  ordered_json wgc = ordered_json::object();
  for (const auto& [set_id, per_cond] : spec.word_given_condition) {
    ordered_json inner = ordered_json::object();
    for (const auto& [cond, v] : per_cond) inner[cond.key()] = v;
    wgc[std::to_string(set_id)] = inner;
  }
  doc["word_given_condition"] = wgc;
  if (!spec.set_weights.empty()) {
    ordered_json sw = ordered_json::object();
    for (const auto& [id, w] : spec.set_weights) sw[std::to_string(id)] = w;
    doc["set_weights"] = sw;
  }
  doc["filler_vocab"] = spec.filler_vocab;
  doc["tokens_per_sentence"] = {spec.min_tokens, spec.max_tokens};
  doc["num_sentences"] = spec.num_sentences;
  doc["seed"] = spec.seed;
  doc["target_pos"] = spec.target_pos;
  doc["filler_pos"] = spec.filler_pos;
  return doc.dump(2);
}

}  // namespace cater
