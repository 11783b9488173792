#include <doctest.h>

#include "cater/lexicon.hpp"
#include "cater/watermark.hpp"
#include "support.hpp"

using namespace cater;
using testing::error_of;

namespace {

Condition cond(std::string label) { return Condition{{std::move(label)}}; }

WatermarkLexicon lexicon() {
  return WatermarkLexicon({{0, {"help", "aid"}}, {1, {"region", "area"}}});
}

RuleTable area_rules() {
  RuleTable t;
  t.feature = FeatureSpec{FeatureKind::Pos, 1, 36};
  SetRules r;
  r.set_id = 1;
  r.rules[cond("ADJ")] = "region";
  r.rules[cond("DET")] = "area";
  t.sets.push_back(r);
  return t;
}

std::vector<std::string> surfaces(const Corpus& c) {
  std::vector<std::string> out;
  for (const Sentence& s : c.sentences) {
    for (const Token& t : s.tokens) out.push_back(t.surface);
  }
  return out;
}

}  // namespace

TEST_CASE("conditional substitution") {
  const Corpus in = testing::corpus({testing::flat(
      {{"what", "PRON"}, {"about", "ADP"}, {"this", "DET"}, {"particular", "ADJ"},
       {"area", "NOUN"}, {"?", "PUNCT"}})});
  const Watermarked out = apply(in, lexicon(), area_rules());
  CHECK(render_plaintext(out.corpus) == "what about this particular region ?");
  CHECK(out.log.totals == ApplicationCounters{1, 1, 0, 0});
  CHECK(out.log.per_set.at(1) == ApplicationCounters{1, 1, 0, 0});
}

TEST_CASE("unseen condition falls back to identity") {
  const Corpus in = testing::corpus({testing::flat({{"we", "PRON"}, {"area", "NOUN"}})});
  const Watermarked out = apply(in, lexicon(), area_rules());
  CHECK(render_plaintext(out.corpus) == "we area");
  CHECK(out.log.totals == ApplicationCounters{1, 0, 0, 1});
}

TEST_CASE("tokens of sets without rules are not candidates") {
  const Corpus in = testing::corpus({testing::flat({{"the", "DET"}, {"help", "NOUN"}})});
  const Watermarked out = apply(in, lexicon(), area_rules());
  CHECK(render_plaintext(out.corpus) == "the help");
  CHECK(out.log.totals == ApplicationCounters{});
}

TEST_CASE("case patterns are preserved") {
  const Corpus in = testing::corpus({testing::flat({{"The", "DET"}, {"Region", "NOUN"}}),
                                     testing::flat({{"THE", "DET"}, {"REGION", "NOUN"}}),
                                     testing::flat({{"the", "DET"}, {"region", "NOUN"}}),
                                     testing::flat({{"the", "DET"}, {"area", "NOUN"}})});
  const Watermarked out = apply(in, lexicon(), area_rules());
  CHECK(surfaces(out.corpus) ==
        std::vector<std::string>{"The", "Area", "THE", "AREA", "the", "area", "the", "area"});
  CHECK(out.log.totals == ApplicationCounters{4, 3, 1, 0});
  CHECK(match_case("Region", "area") == "Area");
  CHECK(match_case("A", "aid") == "Aid");
  CHECK(match_case("rEGION", "area") == "area");
  CHECK(match_case("HELP", "aid") == "AID");
}

TEST_CASE("conditions come from the original annotation") {
  // Two adjacent lexicon words: substituting the first must not change the
  // condition used for the second.
  const Corpus in = testing::corpus(
      {testing::flat({{"this", "DET"}, {"region", "NOUN"}, {"area", "ADJ"}, {"x", "X"}})});
  RuleTable t = area_rules();
  t.sets[0].rules[cond("NOUN")] = "region";
  const Watermarked out = apply(in, lexicon(), t);
  CHECK(surfaces(out.corpus) == std::vector<std::string>{"this", "area", "region", "x"});
}

TEST_CASE("feature mismatch and bad designations") {
  const Corpus in = testing::corpus({testing::flat({{"this", "DET"}, {"area", "NOUN"}})});
  CHECK(error_of([&] {
          apply(in, lexicon(), area_rules(), FeatureSpec{FeatureKind::Dep, 1, 36});
        }) == ErrorCode::FeatureMismatch);
  CHECK(error_of([&] {
          apply(in, lexicon(), area_rules(), FeatureSpec{FeatureKind::Pos, 2, 36});
        }) == ErrorCode::FeatureMismatch);
  CHECK_NOTHROW(apply(in, lexicon(), area_rules(), FeatureSpec{FeatureKind::Pos, 1, 50}));
  RuleTable bad = area_rules();
  bad.sets[0].rules[cond("DET")] = "aid";
  CHECK(error_of([&] { apply(in, lexicon(), bad); }) == ErrorCode::InvalidDesignation);
  RuleTable missing = area_rules();
  missing.sets[0].set_id = 8;
  CHECK(error_of([&] { apply(in, lexicon(), missing); }) == ErrorCode::InvalidDesignation);
}

TEST_CASE("unconditional baseline") {
  const Corpus in = testing::corpus({testing::flat({{"help", "NOUN"}, {"me", "PRON"}}),
                                     testing::flat({{"Help", "VERB"}, {"aid", "NOUN"}}),
                                     testing::flat({{"help", "NOUN"}, {"aid", "NOUN"}})});
  const Watermarked out = apply_unconditional(in, lexicon(), {{0, "aid"}});
  std::size_t help = 0;
  std::size_t aid = 0;
  for (const auto& w : surfaces(out.corpus)) {
    help += to_lower_ascii(w) == "help";
    aid += to_lower_ascii(w) == "aid";
  }
  CHECK(help == 0);
  CHECK(aid == 5);
  CHECK(out.log.totals == ApplicationCounters{5, 3, 2, 0});

  const Corpus none = testing::corpus({testing::flat({{"nothing", "PRON"}})});
  CHECK(apply_unconditional(none, lexicon(), {{0, "aid"}}).corpus == none);

  const Corpus same = testing::corpus({testing::flat({{"aid", "NOUN"}, {"aid", "NOUN"}})});
  const Watermarked s = apply_unconditional(same, lexicon(), {{0, "aid"}});
  CHECK(s.corpus == same);
  CHECK(s.log.totals.substituted == 0);

  CHECK(error_of([&] { apply_unconditional(in, lexicon(), {{0, "area"}}); }) ==
        ErrorCode::InvalidDesignation);
  CHECK(error_of([&] { apply_unconditional(in, lexicon(), {{5, "aid"}}); }) ==
        ErrorCode::InvalidDesignation);
}

TEST_CASE("structure preservation, idempotence and determinism on random corpora") {
  Rng rng(1234);
  RuleTable dep;
  dep.feature = FeatureSpec{FeatureKind::Dep, 2, 36};
  SetRules r0;
  r0.set_id = 0;
  r0.rules[Condition{{"obj", "root"}}] = "aid";
  r0.rules[Condition{{"nsubj", "root"}}] = "help";
  SetRules r1;
  r1.set_id = 1;
  r1.rules[Condition{{"obl", "root"}}] = "region";
  r1.rules[Condition{{"det", "obj"}}] = "area";
  dep.sets = {r0, r1};
  for (int trial = 0; trial < 100; ++trial) {
    Corpus c;
    for (std::size_t i = 0, n = 1 + rng.below(6); i < n; ++i) {
      c.sentences.push_back(testing::random_sentence(rng, 1 + rng.below(10)));
    }
    const Watermarked once = apply(c, lexicon(), dep);
    const auto& log = once.log.totals;
    CHECK(log.candidates_seen == log.substituted + log.unchanged_by_rule + log.fallback_identity);
    REQUIRE(once.corpus.sentences.size() == c.sentences.size());
    for (std::size_t i = 0; i < c.sentences.size(); ++i) {
      const auto& a = c.sentences[i].tokens;
      const auto& b = once.corpus.sentences[i].tokens;
      REQUIRE(a.size() == b.size());
      for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(a[j].index == b[j].index);
        CHECK(a[j].pos == b[j].pos);
        CHECK(a[j].head == b[j].head);
        CHECK(a[j].deprel == b[j].deprel);
      }
    }
    const Watermarked twice = apply(once.corpus, lexicon(), dep);
    CHECK(twice.corpus == once.corpus);
    CHECK(twice.log.totals.substituted == 0);
    CHECK(apply(c, lexicon(), dep).corpus == once.corpus);

    ApplicationLog merged;
    for (const auto& [id, counters] : once.log.per_set) {
      ApplicationLog part;
      part.totals = counters;
      part.per_set[id] = counters;
      merged.merge(part);
    }
    CHECK(merged.totals == once.log.totals);
  }
}
