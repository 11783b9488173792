#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cater/features.hpp"
#include "cater/stats.hpp"

namespace cater {

// One-hot column matrix X in compact form: assignment[j] is the row holding
// the single 1 of column j (the designated word for condition j).
using Assignment = std::vector<std::size_t>;

struct ObjectiveBreakdown {
  double indistinguishable = 0.0;  // ||Wc - Xc||^2
  double distinct = 0.0;           // sum_j ||W[:,j] - X[:,j]||^2, unscaled
  double total = 0.0;              // indistinguishable - alpha/|C| * distinct
};

struct OptimizerConfig {
  double alpha = 0.01;
  std::uint64_t exact_threshold = std::uint64_t{1} << 20;
  int restarts = 16;
  int max_sweeps = 100;
  std::uint64_t seed = 0;
};

struct Solution {
  Assignment assignment;
  ObjectiveBreakdown objective;
  bool exact = false;
};

// Totals closer than this are treated as ties and resolved lexicographically.
inline constexpr double kTieTolerance = 1e-14;

ObjectiveBreakdown objective(const CondDistribution& dist, const Assignment& x, double alpha);

// R^|C|, saturating at UINT64_MAX.
std::uint64_t assignment_count(std::size_t num_words, std::size_t num_conditions);

// Full enumeration; ties go to the lexicographically smallest assignment.
// Throws Error(TooLarge) when R^|C| exceeds config.exact_threshold.
Solution solve_exact(const CondDistribution& dist, const OptimizerConfig& config);

// Seeded coordinate descent with random restarts.
Solution solve_local(const CondDistribution& dist, const OptimizerConfig& config);

// solve_exact when the instance fits under exact_threshold, else solve_local.
Solution solve(const CondDistribution& dist, const OptimizerConfig& config);

Assignment argmax_assignment(const CondDistribution& dist);

struct ConvexityDiagnostic {
  double min_eigenvalue = 0.0;
  double alpha_threshold = 0.0;
  bool convex = false;
  // Distinct eigenvalues of the relaxed Hessian with their multiplicities.
  std::vector<std::pair<double, std::size_t>> spectrum;
};

// Closed form: H = 2 (c c^T) (x) I_R - (2 alpha / |C|) I, so the eigenvalues
// are 2||c||^2 - 2alpha/|C| (multiplicity R) and -2alpha/|C| (multiplicity
// R(|C|-1)).
ConvexityDiagnostic convexity_diagnostic(const std::vector<double>& c, double alpha,
                                         std::size_t num_words);
ConvexityDiagnostic convexity_diagnostic(const CondDistribution& dist, double alpha);

// Spectrum expanded to R*|C| values, ascending.
std::vector<double> hessian_eigenvalues(const ConvexityDiagnostic& diagnostic);

struct SetRules {
  int set_id = 0;
  std::map<Condition, std::string> rules;  // condition -> designated word
  ObjectiveBreakdown objective;
};

struct RuleTable {
  FeatureSpec feature;
  double alpha = 0.01;
  std::vector<SetRules> sets;  // ascending indistinguishable term

  const SetRules* find(int set_id) const;
};

struct Candidate {
  int set_id = 0;
  std::vector<std::string> words;
  std::vector<Condition> conditions;
  Assignment assignment;
  ObjectiveBreakdown objective;
};

Candidate make_candidate(const CondDistribution& dist, const Solution& solution);

// Keeps the top_k candidates with the smallest indistinguishable term
// (ties by set id).
RuleTable rank_and_select(std::vector<Candidate> candidates, std::size_t top_k,
                          const FeatureSpec& feature, double alpha);

}  // namespace cater
