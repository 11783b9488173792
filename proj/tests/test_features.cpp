#include <doctest.h>

#include <algorithm>
#include <set>

#include "cater/features.hpp"
#include "support.hpp"

using namespace cater;
using testing::error_of;
using testing::Tok;

namespace {

// We/PRON must/AUX protect/VERB this/DET region/NOUN ./PUNCT
Sentence protect_region() {
  return testing::sentence({{"We", "PRON", 3, "nsubj"},
                            {"must", "AUX", 3, "aux"},
                            {"protect", "VERB", 0, "root"},
                            {"this", "DET", 5, "det"},
                            {"region", "NOUN", 3, "obj"},
                            {".", "PUNCT", 3, "punct"}});
}

Condition cond(std::vector<std::string> labels) { return Condition{std::move(labels)}; }

}  // namespace

TEST_CASE("first-order POS") {
  const Sentence s = testing::sentence({{"We", "PRON", 2, "nsubj"},
                                        {"visit", "VERB", 0, "root"},
                                        {"our", "PRON", 4, "nmod"},
                                        {"region", "NOUN", 2, "obj"}});
  CHECK(pos_condition(s, 3, 1) == cond({"PRON"}));
  CHECK(pos_condition(s, 0, 1) == cond({"[none]"}));
}

TEST_CASE("higher-order POS schedule") {
  const Sentence s = protect_region();
  CHECK(pos_condition(s, 4, 2) == cond({"DET", "PUNCT"}));
  CHECK(pos_condition(s, 4, 3) == cond({"VERB", "DET", "PUNCT"}));
  CHECK(pos_condition(s, 4, 4) == cond({"VERB", "DET", "PUNCT", "[none]"}));
  CHECK(pos_condition(s, 4, 5) == cond({"AUX", "VERB", "DET", "PUNCT", "[none]"}));
  CHECK(pos_condition(s, 0, 3) == cond({"[none]", "[none]", "AUX"}));
  CHECK(pos_offsets(1) == std::vector<int>{-1});
  CHECK(pos_offsets(2) == std::vector<int>{-1, 1});
  CHECK(pos_offsets(3) == std::vector<int>{-2, -1, 1});
  CHECK(pos_offsets(4) == std::vector<int>{-2, -1, 1, 2});
  CHECK(pos_offsets(5) == std::vector<int>{-3, -2, -1, 1, 2});
}

TEST_CASE("DEP head chains") {
  const Sentence s = protect_region();
  CHECK(dep_condition(s, 4, 1) == cond({"obj"}));
  CHECK(dep_condition(s, 4, 2) == cond({"obj", "root"}));
  CHECK(dep_condition(s, 4, 3) == cond({"obj", "root", "[none]"}));
  CHECK(dep_condition(s, 2, 2) == cond({"root", "[none]"}));
  CHECK(dep_condition(s, 3, 3) == cond({"det", "obj", "root"}));

  const Sentence obl = testing::sentence({{"live", "VERB", 0, "root"},
                                          {"in", "ADP", 4, "case"},
                                          {"this", "DET", 4, "det"},
                                          {"region", "NOUN", 1, "obl"}});
  CHECK(dep_condition(obl, 3, 1) == cond({"obl"}));
}

TEST_CASE("extract_condition dispatches on kind") {
  const Sentence s = protect_region();
  CHECK(extract_condition(s, 4, FeatureSpec{FeatureKind::Pos, 1, 36}) == cond({"DET"}));
  CHECK(extract_condition(s, 4, FeatureSpec{FeatureKind::Dep, 1, 36}) == cond({"obj"}));
}

TEST_CASE("invalid positions and specs") {
  const Sentence s = protect_region();
  CHECK(error_of([&] { pos_condition(s, 6, 1); }) == ErrorCode::InvalidIndex);
  CHECK(error_of([&] { dep_condition(s, 99, 1); }) == ErrorCode::InvalidIndex);
  CHECK_THROWS_AS(validate_feature_spec(FeatureSpec{FeatureKind::Pos, 0, 36}), Error);
  CHECK_THROWS_AS(validate_feature_spec(FeatureSpec{FeatureKind::Pos, 1, 0}), Error);
  CHECK_THROWS_AS(parse_feature_kind("ner"), Error);
  CHECK(parse_feature_kind("dep") == FeatureKind::Dep);
  CHECK(feature_kind_name(FeatureKind::Pos) == "pos");
}

TEST_CASE("condition space size") {
  CHECK(condition_space_size({FeatureKind::Pos, 1, 36}) == 36);
  CHECK(condition_space_size({FeatureKind::Pos, 2, 36}) == 1296);
  CHECK(condition_space_size({FeatureKind::Pos, 3, 36}) == 46656);
  CHECK(condition_space_size({FeatureKind::Dep, 12, 36}) == 4738381338321616896ULL);
  CHECK(error_of([] { condition_space_size({FeatureKind::Pos, 13, 36}); }) ==
        ErrorCode::Overflow);
  CHECK(error_of([] { checked_mul(std::uint64_t{1} << 40, std::uint64_t{1} << 30); }) ==
        ErrorCode::Overflow);
}

TEST_CASE("condition keys") {
  const Condition c = cond({"VERB", "DET", "PUNCT"});
  CHECK(c.key() == "VERB|DET|PUNCT");
  CHECK(Condition::from_key(c.key()) == c);
  CHECK(Condition::from_key("[none]") == cond({"[none]"}));
}

TEST_CASE("extraction properties on random sentences") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const Sentence s = testing::random_sentence(rng, 1 + rng.below(10));
    std::set<std::string> pos_labels{std::string(kNoneLabel)};
    std::set<std::string> dep_labels{std::string(kNoneLabel)};
    for (const Token& t : s.tokens) {
      pos_labels.insert(t.pos);
      dep_labels.insert(t.deprel);
    }
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      for (int k = 1; k <= 6; ++k) {
        const Condition p = pos_condition(s, i, k);
        const Condition d = dep_condition(s, i, k);
        REQUIRE(p.labels.size() == static_cast<std::size_t>(k));
        REQUIRE(d.labels.size() == static_cast<std::size_t>(k));
        CHECK(p == pos_condition(s, i, k));
        for (const auto& l : p.labels) CHECK(pos_labels.count(l) == 1);
        for (const auto& l : d.labels) CHECK(dep_labels.count(l) == 1);
        if (k > 1) {
          // Lower order agrees on the slots it shares with this one.
          const Condition lower = pos_condition(s, i, k - 1);
          const auto hi = pos_offsets(k);
          const auto lo = pos_offsets(k - 1);
          for (std::size_t a = 0; a < lo.size(); ++a) {
            const auto at = std::find(hi.begin(), hi.end(), lo[a]);
            REQUIRE(at != hi.end());
            CHECK(lower.labels[a] == p.labels[static_cast<std::size_t>(at - hi.begin())]);
          }
          const Condition dlower = dep_condition(s, i, k - 1);
          CHECK(std::equal(dlower.labels.begin(), dlower.labels.end(), d.labels.begin()));
        }
      }
    }
  }
}
