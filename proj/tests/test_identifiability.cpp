#include <doctest.h>

#include <cmath>

#include "cater/identifiability.hpp"
#include "cater/watermark.hpp"
#include "support.hpp"

using namespace cater;
using testing::error_of;

namespace {

const FeatureSpec kPos1{FeatureKind::Pos, 1, 36};

Condition cond(std::string label) { return Condition{{std::move(label)}}; }

Corpus units(const std::vector<std::tuple<std::string, std::string, int>>& spec) {
  Corpus c;
  for (const auto& [label, word, times] : spec) {
    for (int i = 0; i < times; ++i) c.sentences.push_back(testing::flat({{"x", label}, {word, "NOUN"}}));
  }
  return c;
}

}  // namespace

TEST_CASE("sparsity-bound arithmetic") {
  const SparsityReport r = sparse_support_bound(36, 3, 10000, 1);
  CHECK(r.space_size == 46656);
  CHECK(r.bound == 41656.0);
  CHECK(r.precondition_holds);

  const SparsityReport zero = sparse_support_bound(36, 2, 0, 4);
  CHECK(zero.bound == 1296.0);

  const SparsityReport dense = sparse_support_bound(36, 2, 10000, 1);
  CHECK_FALSE(dense.precondition_holds);
  CHECK(dense.bound == 0.0);

  const SparsityReport frac = sparse_support_bound(10, 1, 7, 2);
  CHECK(std::abs(frac.bound - (10 - 7.0 / 3)) < 1e-12);

  CHECK(error_of([] { sparse_support_bound(36, 20, 5, 1); }) == ErrorCode::Overflow);
  CHECK(error_of([] { sparse_support_bound(0, 1, 5, 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { sparse_support_bound(36, 1, 5, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("support census") {
  const WatermarkLexicon lex({{0, {"region", "area"}}, {1, {"help", "aid"}}});
  const Corpus c = units({{"DET", "region", 3}, {"DET", "help", 2}, {"ADJ", "area", 2},
                          {"VERB", "aid", 1}, {"VERB", "banana", 9}});
  const SupportCensus census = support_census(c, lex, kPos1);
  CHECK(census.units == 8);
  CHECK(census.space_size == 36);
  CHECK(census.support.at(cond("DET")) == 5);
  CHECK(census.support.at(cond("ADJ")) == 2);
  CHECK(census.support.at(cond("VERB")) == 1);
  CHECK(census.observed_t(1) == 34);
  CHECK(census.observed_t(2) == 35);
  CHECK(census.observed_t(5) == 36);

  const SupportCensus empty = support_census(Corpus{}, lex, kPos1);
  for (std::uint64_t m = 1; m < 5; ++m) CHECK(empty.observed_t(m) == 36);
}

TEST_CASE("census respects the sparsity-bound inequality on random samples") {
  Rng rng(17);
  const WatermarkLexicon lex({{0, {"region", "area"}}, {1, {"help", "aid"}}});
  for (int trial = 0; trial < 200; ++trial) {
    Corpus c;
    for (std::size_t i = 0, n = rng.below(40); i < n; ++i) {
      c.sentences.push_back(testing::random_sentence(rng, 1 + rng.below(10)));
    }
    const FeatureSpec spec{rng.below(2) ? FeatureKind::Pos : FeatureKind::Dep,
                           1 + static_cast<int>(rng.below(3)), 7};
    const SupportCensus census = support_census(c, lex, spec);
    for (std::uint64_t m = 1; m <= 4; ++m) {
      const SparsityReport r = sparse_support_bound(spec.labelset_size, spec.order, census.units, m);
      if (r.precondition_holds) CHECK(static_cast<double>(census.observed_t(m)) >= r.bound);
    }
  }
}

TEST_CASE("imbalance probability") {
  CHECK(imbalance_prob({1.0, 0.0}, 1) == 1.0);
  CHECK(imbalance_prob({1.0, 0.0}, 7) == 1.0);
  CHECK(imbalance_prob({0.5, 0.5}, 2) == 0.5);
  CHECK(std::abs(imbalance_prob({0.9, 0.1}, 3) - 0.730) < 1e-15);
  CHECK(error_of([] { imbalance_prob({0.5, 0.4}, 2); }) == ErrorCode::NotNormalized);
  CHECK(error_of([] { imbalance_prob({1.5, -0.5}, 2); }) == ErrorCode::NotNormalized);
  CHECK(error_of([] { imbalance_prob({0.5, 0.5}, 0); }) == ErrorCode::InvalidArgument);

  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + rng.below(4));
    double s = 0;
    for (auto& x : v) s += x = -std::log(1 - rng.uniform());
    for (auto& x : v) x /= s;
    double prev = imbalance_prob(v, 1);
    CHECK(std::abs(prev - 1.0) < 1e-9);
    for (std::uint64_t m = 2; m <= 30; ++m) {
      const double cur = imbalance_prob(v, m);
      CHECK(cur <= prev);
      CHECK(cur >= 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("suspected entries") {
  const WatermarkLexicon lex({{0, {"a", "b"}}});
  const Corpus c = units({{"x", "a", 3}, {"y", "a", 2}, {"y", "b", 2}, {"z", "b", 1}});
  const SuspectReport r = suspected_entries(c, lex, kPos1, 1);
  CHECK(r.suspected == 2);
  CHECK(r.per_set.at(0) == 2);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].condition == cond("x"));
  CHECK(r.entries[0].word == "a");
  CHECK(r.entries[0].support == 3);
  CHECK(r.entries[1].condition == cond("z"));
  CHECK(r.entries[1].word == "b");
  CHECK(suspected_entries(c, lex, kPos1, 2).suspected == 1);
  CHECK(suspected_entries(c, lex, kPos1, 100).suspected == 0);
}

TEST_CASE("apply output makes every covered condition a suspect") {
  const WatermarkLexicon lex({{0, {"a", "b"}}});
  const Corpus c = units({{"x", "a", 3}, {"x", "b", 3}, {"y", "a", 2}, {"y", "b", 2},
                          {"w", "b", 1}});
  RuleTable t;
  t.feature = kPos1;
  SetRules r;
  r.set_id = 0;
  r.rules[cond("x")] = "b";
  r.rules[cond("y")] = "a";
  r.rules[cond("w")] = "a";
  t.sets.push_back(r);
  const SuspectReport s = suspected_entries(apply(c, lex, t).corpus, lex, kPos1, 1);
  CHECK(s.suspected == 3);
}

TEST_CASE("combinatorial upper bound") {
  CHECK(combinatorial_upper_bound(10, 36, 1) == 360);
  CHECK(combinatorial_upper_bound(10, 36, 2) == 12960);
  CHECK(combinatorial_upper_bound(1, 36, 1) == 36);
  CHECK(error_of([] { combinatorial_upper_bound(1000, 36, 12); }) == ErrorCode::Overflow);
  CHECK(error_of([] { combinatorial_upper_bound(0, 36, 1); }) == ErrorCode::InvalidArgument);
}
