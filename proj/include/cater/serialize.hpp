#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cater/attacks.hpp"
#include "cater/features.hpp"
#include "cater/identifiability.hpp"
#include "cater/rules.hpp"
#include "cater/stats.hpp"
#include "cater/verify.hpp"
#include "cater/watermark.hpp"

// JSON forms of every file artifact. Conditions are always written as their
// '|'-joined key. All dumps are deterministic for identical inputs.
namespace cater {

struct DistributionFile {
  FeatureSpec feature;
  std::vector<CondDistribution> sets;
};

std::string dump_distributions(const DistributionFile& file);
DistributionFile load_distributions(std::string_view json_document);

std::string dump_rules(const RuleTable& table);
RuleTable load_rules(std::string_view json_document);

// {"0":"aid", ...} set id -> designated word.
std::map<int, std::string> load_designation(std::string_view json_document);

std::string dump_application_log(const ApplicationLog& log);
std::string dump_verification(const VerificationReport& report);
std::string dump_sparsity(const SparsityReport& report);
std::string dump_suspects(const SuspectReport& report);
std::string dump_frequency_attack(const FrequencyAttack& attack);
std::string dump_leakage(const LeakageResult& result);

}  // namespace cater
