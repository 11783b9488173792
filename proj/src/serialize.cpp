#include "cater/serialize.hpp"

#include <json.hpp>

#include "cater/error.hpp"

namespace cater {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kIndent = 2;

ordered_json feature_json(const FeatureSpec& f) {
  return {{"kind", feature_kind_name(f.kind)},
          {"order", f.order},
          {"labelset_size", f.labelset_size}};
}

FeatureSpec feature_from(const json& j) {
  FeatureSpec f;
  f.kind = parse_feature_kind(j.at("kind").get<std::string>());
  f.order = j.at("order").get<int>();
  f.labelset_size = j.value("labelset_size", std::uint64_t{36});
  validate_feature_spec(f);
  return f;
}

ordered_json objective_json(const ObjectiveBreakdown& o) {
  return {{"indistinguishable", o.indistinguishable},
          {"distinct", o.distinct},
          {"total", o.total}};
}

json parse_document(std::string_view doc, const char* what) {
  try {
    return json::parse(doc);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::FormatError, std::string(what) + " is not valid JSON: " + e.what());
  }
}

ordered_json counters_json(const ApplicationCounters& c) {
  return {{"candidates_seen", c.candidates_seen},
          {"substituted", c.substituted},
          {"unchanged_by_rule", c.unchanged_by_rule},
          {"fallback_identity", c.fallback_identity}};
}

ordered_json ranking_json(const SuspicionRanking& r) {
  ordered_json out = ordered_json::array();
  for (const WordRatio& w : r.entries) {
    out.push_back({{"word", w.word},
                   {"ratio", w.ratio},
                   {"reference_count", w.reference_count},
                   {"suspect_count", w.suspect_count}});
  }
  return out;
}

ordered_json triples_json(const RuleSet& rules) {
  ordered_json out = ordered_json::array();
  for (const RuleTriple& t : rules) {
    out.push_back({{"set", t.set_id}, {"condition", t.condition.key()}, {"word", t.word}});
  }
  return out;
}

}  // namespace

std::string dump_distributions(const DistributionFile& file) {
  ordered_json sets = ordered_json::array();
  for (const CondDistribution& d : file.sets) {
    std::vector<std::string> keys;
    for (const Condition& c : d.conditions) keys.push_back(c.key());
    sets.push_back({{"id", d.set_id},
                    {"words", d.words},
                    {"conditions", keys},
                    {"counts", d.counts},
                    {"W", d.W},
                    {"c", d.c},
                    {"support", d.support}});
  }
  ordered_json doc;
  doc["feature"] = feature_json(file.feature);
  doc["sets"] = sets;
  return doc.dump(kIndent);
}

DistributionFile load_distributions(std::string_view json_document) {
  const json doc = parse_document(json_document, "distribution file");
  try {
    DistributionFile file;
    file.feature = feature_from(doc.at("feature"));
    for (const json& s : doc.at("sets")) {
      CondDistribution d;
      d.set_id = s.at("id").get<int>();
      d.words = s.at("words").get<std::vector<std::string>>();
      for (const auto& key : s.at("conditions").get<std::vector<std::string>>()) {
        d.conditions.push_back(Condition::from_key(key));
      }
      d.W = s.at("W").get<std::vector<std::vector<double>>>();
      d.c = s.at("c").get<std::vector<double>>();
      if (s.contains("support")) d.support = s["support"].get<std::vector<std::uint64_t>>();
      if (s.contains("counts")) {
        d.counts = s["counts"].get<std::vector<std::vector<std::uint64_t>>>();
      }
      validate_distribution(d);
      file.sets.push_back(std::move(d));
    }
    return file;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed distribution file: ") + e.what());
  }
}

std::string dump_rules(const RuleTable& table) {
  ordered_json sets = ordered_json::array();
  for (const SetRules& s : table.sets) {
    ordered_json rules = ordered_json::object();
    for (const auto& [cond, word] : s.rules) rules[cond.key()] = word;
    sets.push_back({{"id", s.set_id}, {"rules", rules}, {"objective", objective_json(s.objective)}});
  }
  ordered_json doc;
  doc["feature"] = {{"kind", feature_kind_name(table.feature.kind)},
                    {"order", table.feature.order}};
  doc["alpha"] = table.alpha;
  doc["sets"] = sets;
  return doc.dump(kIndent);
}

RuleTable load_rules(std::string_view json_document) {
  const json doc = parse_document(json_document, "rule table");
  try {
    RuleTable table;
    table.feature = feature_from(doc.at("feature"));
    table.alpha = doc.value("alpha", 0.01);
    for (const json& s : doc.at("sets")) {
      SetRules r;
      r.set_id = s.at("id").get<int>();
      for (const auto& [key, word] : s.at("rules").items()) {
        r.rules.emplace(Condition::from_key(key), to_lower_ascii(word.get<std::string>()));
      }
      if (s.contains("objective")) {
        const json& o = s["objective"];
        r.objective.indistinguishable = o.value("indistinguishable", 0.0);
        r.objective.distinct = o.value("distinct", 0.0);
        r.objective.total = o.value("total", 0.0);
      }
      if (table.find(r.set_id)) {
        throw Error(ErrorCode::FormatError, "duplicate set " + std::to_string(r.set_id) +
                                                " in rule table");
      }
      table.sets.push_back(std::move(r));
    }
    return table;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed rule table: ") + e.what());
  }
}

std::map<int, std::string> load_designation(std::string_view json_document) {
  const json doc = parse_document(json_document, "word map");
  if (!doc.is_object()) {
    throw Error(ErrorCode::FormatError, "word map must be an object {\"set id\": \"word\"}");
  }
  std::map<int, std::string> out;
  try {
    for (const auto& [key, word] : doc.items()) out[std::stoi(key)] = word.get<std::string>();
  } catch (const std::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed word map: ") + e.what());
  }
  return out;
}

std::string dump_application_log(const ApplicationLog& log) {
  ordered_json doc = counters_json(log.totals);
  ordered_json per = ordered_json::array();
  for (const auto& [id, c] : log.per_set) {
    ordered_json entry = {{"id", id}};
    entry.update(counters_json(c));
    per.push_back(entry);
  }
  doc["per_set"] = per;
  return doc.dump(kIndent);
}

std::string dump_verification(const VerificationReport& report) {
  ordered_json per = ordered_json::array();
  for (const auto& [id, u] : report.per_set) per.push_back({{"id", id}, {"k", u.k}, {"n", u.n}});
  ordered_json doc = {{"k", report.k},
                      {"n", report.n},
                      {"p", report.p},
                      {"p_value", report.p_value},
                      {"per_set", per}};
  return doc.dump(kIndent);
}

std::string dump_sparsity(const SparsityReport& r) {
  ordered_json doc = {{"feature_size", r.feature_size},
                      {"order", r.order},
                      {"sample_tokens", r.sample_tokens},
                      {"threshold", r.threshold},
                      {"space_size", r.space_size},
                      {"bound", r.bound},
                      {"precondition_holds", r.precondition_holds}};
  if (r.observed_t) doc["observed_t"] = *r.observed_t;
  return doc.dump(kIndent);
}

std::string dump_suspects(const SuspectReport& r) {
  ordered_json per = ordered_json::array();
  for (const auto& [id, n] : r.per_set) per.push_back({{"id", id}, {"suspected", n}});
  ordered_json entries = ordered_json::array();
  for (const SuspectedEntry& e : r.entries) {
    entries.push_back({{"set", e.set_id},
                       {"condition", e.condition.key()},
                       {"word", e.word},
                       {"support", e.support}});
  }
  ordered_json doc = {{"suspected", r.suspected}, {"per_set", per}, {"entries", entries}};
  return doc.dump(kIndent);
}

std::string dump_frequency_attack(const FrequencyAttack& attack) {
  ordered_json doc = {{"decreased", ranking_json(attack.decreased)},
                      {"increased", ranking_json(attack.increased)}};
  return doc.dump(kIndent);
}

std::string dump_leakage(const LeakageResult& r) {
  ordered_json doc = {{"suspected_count", r.suspected.size()},
                      {"true_rule_count", r.true_rules.size()},
                      {"hits", r.hits},
                      {"precision", r.precision},
                      {"recall", r.recall},
                      {"confusion_factor", r.confusion_factor},
                      {"suspected", triples_json(r.suspected)}};
  return doc.dump(kIndent);
}

}  // namespace cater
