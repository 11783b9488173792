#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cater/corpus.hpp"

namespace cater {

inline constexpr std::string_view kNoneLabel = "[none]";

enum class FeatureKind { Pos, Dep };

struct FeatureSpec {
  FeatureKind kind = FeatureKind::Pos;
  int order = 1;
  // |F|; only used by the counting analyses, never by extraction.
  std::uint64_t labelset_size = 36;

  // Two specs extract identical conditions iff kind and order agree.
  bool same_extraction(const FeatureSpec& other) const {
    return kind == other.kind && order == other.order;
  }
};

std::string_view feature_kind_name(FeatureKind kind);
FeatureKind parse_feature_kind(std::string_view name);

void validate_feature_spec(const FeatureSpec& spec);

struct Condition {
  std::vector<std::string> labels;

  auto operator<=>(const Condition&) const = default;
  bool operator==(const Condition&) const = default;

  // Labels joined with '|', e.g. "VERB|DET|PUNCT".
  std::string key() const;
  static Condition from_key(std::string_view key);
};

// Relative offsets read by a POS condition of the given order: left
// neighbours first (far to near), then right neighbours (near to far).
// K=1 -> {-1}, K=2 -> {-1,+1}, K=3 -> {-2,-1,+1}, K=4 -> {-2,-1,+1,+2}, ...
std::vector<int> pos_offsets(int order);

// `position` is the 0-based slot in sentence.tokens.
Condition pos_condition(const Sentence& sentence, std::size_t position, int order);

// d1 = deprel of the token, d(j+1) = deprel of the head of the token that
// gave dj; "[none]" once the chain has passed the root word.
Condition dep_condition(const Sentence& sentence, std::size_t position, int order);

Condition extract_condition(const Sentence& sentence, std::size_t position,
                            const FeatureSpec& spec);

// labelset_size ^ order; throws Error(Overflow) past 2^64 - 1.
std::uint64_t condition_space_size(const FeatureSpec& spec);

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace cater
