#include "cater/features.hpp"

#include <limits>

#include "cater/error.hpp"

namespace cater {

std::string_view feature_kind_name(FeatureKind kind) {
  return kind == FeatureKind::Pos ? "pos" : "dep";
}

FeatureKind parse_feature_kind(std::string_view name) {
  if (name == "pos" || name == "POS") return FeatureKind::Pos;
  if (name == "dep" || name == "DEP") return FeatureKind::Dep;
  throw Error(ErrorCode::InvalidArgument,
              "unknown feature kind '" + std::string(name) + "' (expected pos or dep)");
}

void validate_feature_spec(const FeatureSpec& spec) {
  if (spec.order < 1) {
    throw Error(ErrorCode::InvalidArgument, "feature order must be >= 1");
  }
  if (spec.labelset_size < 1) {
    throw Error(ErrorCode::InvalidArgument, "label set size must be >= 1");
  }
}

std::string Condition::key() const {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += '|';
    out += labels[i];
  }
  return out;
}

Condition Condition::from_key(std::string_view key) {
  Condition c;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = key.find('|', start);
    if (bar == std::string_view::npos) {
      c.labels.emplace_back(key.substr(start));
      return c;
    }
    c.labels.emplace_back(key.substr(start, bar - start));
    start = bar + 1;
  }
}

std::vector<int> pos_offsets(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "feature order must be >= 1");
  const int left = (order + 1) / 2;
  const int right = order / 2;
  std::vector<int> offsets;
  offsets.reserve(order);
  for (int k = left; k >= 1; --k) offsets.push_back(-k);
  for (int k = 1; k <= right; ++k) offsets.push_back(k);
  return offsets;
}

namespace {

void check_position(const Sentence& sentence, std::size_t position) {
  if (position >= sentence.tokens.size()) {
    throw Error(ErrorCode::InvalidIndex,
                "token position " + std::to_string(position) +
                    " out of range for sentence of length " +
                    std::to_string(sentence.tokens.size()));
  }
}

}  // namespace

Condition pos_condition(const Sentence& sentence, std::size_t position, int order) {
  check_position(sentence, position);
  Condition c;
  const auto n = static_cast<long long>(sentence.tokens.size());
  for (int offset : pos_offsets(order)) {
    const long long at = static_cast<long long>(position) + offset;
    if (at < 0 || at >= n) {
      c.labels.emplace_back(kNoneLabel);
    } else {
      c.labels.push_back(sentence.tokens[static_cast<std::size_t>(at)].pos);
    }
  }
  return c;
}

Condition dep_condition(const Sentence& sentence, std::size_t position, int order) {
  check_position(sentence, position);
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "feature order must be >= 1");
  Condition c;
  c.labels.reserve(order);
  int current = static_cast<int>(position) + 1;  // 1-based, 0 once past the root
  for (int j = 0; j < order; ++j) {
    if (current == 0) {
      c.labels.emplace_back(kNoneLabel);
      continue;
    }
    const Token& t = sentence.tokens[static_cast<std::size_t>(current - 1)];
    c.labels.push_back(t.deprel);
    current = t.head;
  }
  return c;
}

Condition extract_condition(const Sentence& sentence, std::size_t position,
                            const FeatureSpec& spec) {
  return spec.kind == FeatureKind::Pos ? pos_condition(sentence, position, spec.order)
                                       : dep_condition(sentence, position, spec.order);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw Error(ErrorCode::Overflow, "integer overflow computing " + std::to_string(a) +
                                         " * " + std::to_string(b));
  }
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    try {
      result = checked_mul(result, base);
    } catch (const Error&) {
      throw Error(ErrorCode::Overflow, std::to_string(base) + "^" +
                                           std::to_string(exponent) +
                                           " exceeds the 64-bit range");
    }
  }
  return result;
}

std::uint64_t condition_space_size(const FeatureSpec& spec) {
  validate_feature_spec(spec);
  return checked_pow(spec.labelset_size, static_cast<std::uint64_t>(spec.order));
}

}  // namespace cater
