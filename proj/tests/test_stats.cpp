#include <doctest.h>

#include <map>

#include "cater/lexicon.hpp"
#include "cater/stats.hpp"
#include "support.hpp"

using namespace cater;
using testing::error_of;

namespace {

const FeatureSpec kPos1{FeatureKind::Pos, 1, 36};

Condition cond(std::string label) { return Condition{{std::move(label)}}; }

WatermarkLexicon region_lexicon() { return WatermarkLexicon({{1, {"region", "area"}}}); }

Corpus det_fixture() {
  std::vector<Sentence> s;
  for (int i = 0; i < 3; ++i) {
    s.push_back(testing::flat({{"protect", "VERB"}, {"this", "DET"}, {"region", "NOUN"}}));
  }
  s.push_back(testing::flat({{"in", "ADP"}, {"the", "DET"}, {"area", "NOUN"}}));
  s.push_back(testing::flat({{"nothing", "PRON"}, {"here", "ADV"}}));
  return testing::corpus(std::move(s));
}

}  // namespace

TEST_CASE("count_conditions on the DET fixture") {
  const auto counts = count_conditions(det_fixture(), region_lexicon(), kPos1);
  REQUIRE(counts.size() == 1);
  CHECK(counts[0].set_id() == 1);
  CHECK(counts[0].num_conditions() == 1);
  CHECK(counts[0].counts(cond("DET")) == std::vector<std::uint64_t>{3, 1});
}

TEST_CASE("no lexicon words gives empty counts") {
  const Corpus c = testing::corpus({testing::flat({{"nothing", "PRON"}, {"here", "ADV"}})});
  const auto counts = count_conditions(c, region_lexicon(), kPos1);
  REQUIRE(counts.size() == 1);
  CHECK(counts[0].empty());
  CHECK(counts[0].grand_total() == 0);
  CHECK(error_of([&] { to_distribution(counts[0]); }) == ErrorCode::EmptyCounts);
}

TEST_CASE("concatenation doubles every count") {
  Corpus c = det_fixture();
  const auto once = count_conditions(c, region_lexicon(), kPos1);
  const auto sentences = c.sentences;
  c.sentences.insert(c.sentences.end(), sentences.begin(), sentences.end());
  const auto twice = count_conditions(c, region_lexicon(), kPos1);
  for (const Condition& k : once[0].conditions()) {
    const auto& a = once[0].counts(k);
    const auto& b = twice[0].counts(k);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == 2 * a[i]);
  }
}

TEST_CASE("to_distribution arithmetic") {
  CondCounts counts(1, 2);
  counts.add(cond("DET"), 0, 3);
  counts.add(cond("DET"), 1, 1);
  counts.add(cond("PRON"), 1, 4);
  const CondDistribution d = to_distribution(counts, {"region", "area"});
  CHECK(d.conditions == std::vector<Condition>{cond("DET"), cond("PRON")});
  CHECK(d.W[0][0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(d.W[0][1] == 0.0);
  CHECK(d.W[1][0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d.W[1][1] == 1.0);
  CHECK(d.c == std::vector<double>{0.5, 0.5});
  CHECK(d.support == std::vector<std::uint64_t>{4, 4});
  CHECK_NOTHROW(validate_distribution(d));

  CondCounts single(0, 2);
  single.add(cond("X"), 0, 2);
  single.add(cond("X"), 1, 2);
  const CondDistribution s = to_distribution(single);
  CHECK(s.W == std::vector<std::vector<double>>{{0.5}, {0.5}});
  CHECK(s.c == std::vector<double>{1.0});
}

TEST_CASE("conditions keep first-appearance order") {
  CondCounts counts(0, 2);
  counts.add(cond("ZZZ"), 0);
  counts.add(cond("AAA"), 1);
  counts.add(cond("ZZZ"), 1);
  CHECK(to_distribution(counts).conditions == std::vector<Condition>{cond("ZZZ"), cond("AAA")});
}

TEST_CASE("merge_counts") {
  CondCounts a(0, 2);
  a.add(cond("x"), 0, 1);
  CondCounts b(0, 2);
  b.add(cond("x"), 0, 2);
  b.add(cond("x"), 1, 3);
  const CondCounts ab = merge_counts(a, b);
  CHECK(ab.counts(cond("x")) == std::vector<std::uint64_t>{3, 3});
  CHECK(merge_counts(a, CondCounts(0, 2)) == a);
  CHECK(merge_counts(a, b) == merge_counts(b, a));

  CondCounts c(0, 2);
  c.add(cond("y"), 1, 5);
  CHECK(merge_counts(merge_counts(a, b), c) == merge_counts(a, merge_counts(b, c)));
  CHECK(error_of([&] { merge_counts(a, CondCounts(1, 2)); }) == ErrorCode::SetMismatch);
}

TEST_CASE("reconstruction of the marginal and shard merging") {
  Rng rng(4242);
  const WatermarkLexicon lex({{0, {"region", "area"}}, {1, {"help", "aid"}}});
  for (int trial = 0; trial < 50; ++trial) {
    Corpus full;
    Corpus left;
    Corpus right;
    const std::size_t ns = 2 + rng.below(30);
    for (std::size_t i = 0; i < ns; ++i) {
      Sentence s = testing::random_sentence(rng, 2 + rng.below(8));
      (i % 2 ? left : right).sentences.push_back(s);
      full.sentences.push_back(std::move(s));
    }
    const FeatureSpec spec{rng.below(2) ? FeatureKind::Pos : FeatureKind::Dep,
                           1 + static_cast<int>(rng.below(3)), 36};
    const auto all = count_conditions(full, lex, spec);
    const auto l = count_conditions(left, lex, spec);
    const auto r = count_conditions(right, lex, spec);
    for (std::size_t k = 0; k < all.size(); ++k) {
      CHECK(merge_counts(l[k], r[k]) == all[k]);
      if (all[k].empty()) continue;

      // Marginal word distribution counted directly from the corpus.
      std::map<std::size_t, double> direct;
      double total = 0;
      for (const Sentence& s : full.sentences) {
        for (const Token& t : s.tokens) {
          const auto ref = lex.match(t.surface);
          if (ref && ref->set_id == all[k].set_id()) {
            direct[ref->word_index] += 1;
            total += 1;
          }
        }
      }
      const CondDistribution d = to_distribution(all[k]);
      const auto m = marginal(d);
      for (std::size_t w = 0; w < m.size(); ++w) CHECK(std::abs(m[w] - direct[w] / total) < 1e-12);
    }
  }
}

TEST_CASE("validate_distribution rejects bad matrices") {
  CondDistribution d;
  d.words = {"a", "b"};
  d.conditions = {cond("x")};
  d.W = {{0.6}, {0.3}};
  d.c = {1.0};
  CHECK(error_of([&] { validate_distribution(d); }) == ErrorCode::NotNormalized);
  d.W = {{0.6}, {0.4}};
  d.c = {0.9};
  CHECK(error_of([&] { validate_distribution(d); }) == ErrorCode::NotNormalized);
  d.c = {1.0, 0.0};
  CHECK(error_of([&] { validate_distribution(d); }) == ErrorCode::DimensionMismatch);
}
