#include "cater/verify.hpp"

#include <algorithm>
#include <cmath>

#include "cater/error.hpp"
#include "cater/features.hpp"

namespace cater {

UnitCounts count_units(const Corpus& corpus, const WatermarkLexicon& lexicon,
                       const RuleTable& rules) {
  UnitCounts out;
  for (const Sentence& sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      const Token& token = sentence.tokens[i];
      const auto ref = lexicon.match(token.surface);
      if (!ref) continue;
      const SetRules* set_rules = rules.find(ref->set_id);
      if (!set_rules) continue;
      auto it = set_rules->rules.find(extract_condition(sentence, i, rules.feature));
      if (it == set_rules->rules.end()) continue;
      const bool hit = to_lower_ascii(token.surface) == it->second;
      UnitCount& per = out.per_set[ref->set_id];
      ++per.n;
      ++out.total.n;
      if (hit) {
        ++per.k;
        ++out.total.k;
      }
    }
  }
  return out;
}

double estimate_null_p(const Corpus& reference, const WatermarkLexicon& lexicon,
                       const RuleTable& rules) {
  const UnitCounts units = count_units(reference, lexicon, rules);
  if (units.total.n == 0) {
    throw Error(ErrorCode::NoSupport,
                "reference corpus contains no unit under a rule-covered condition");
  }
  return static_cast<double>(units.total.k) / static_cast<double>(units.total.n);
}

namespace {

// log(sum_i exp(v_i)) over [first, last).
double log_sum_exp(const std::vector<double>& v, std::size_t first, std::size_t last) {
  double top = -INFINITY;
  for (std::size_t i = first; i < last; ++i) top = std::max(top, v[i]);
  if (top == -INFINITY) return top;
  double s = 0.0;
  for (std::size_t i = first; i < last; ++i) s += std::exp(v[i] - top);
  return top + std::log(s);
}

}  // namespace

double binom_two_tail(std::uint64_t k, std::uint64_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::InvalidP, "null probability must lie in (0, 1), got " +
                                         std::to_string(p));
  }
  if (n == 0) throw Error(ErrorCode::ZeroN, "binomial test needs n >= 1 units");
  if (k > n) {
    throw Error(ErrorCode::InvalidArgument,
                "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
  // Reflect onto p <= 1/2 so that (k, n, p) and (n-k, n, 1-p) evaluate the
  // same expression. For p >= 1/2 both 1-p and 1-(1-p) are exact.
  double q = 1.0 - p;
  if (p > 0.5) {
    std::swap(p, q);
    k = n - k;
  } else if (p == 0.5) {
    k = std::min(k, n - k);
  }

  const double log_p = std::log(p);
  const double log_q = std::log(q);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  std::vector<double> log_pmf(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) {
    const double di = static_cast<double>(i);
    const double dn_i = static_cast<double>(n - i);
    log_pmf[i] = log_n_fact - std::lgamma(di + 1.0) - std::lgamma(dn_i + 1.0) + di * log_p +
                 dn_i * log_q;
  }
  const double lower = std::exp(log_sum_exp(log_pmf, 0, k + 1));
  const double upper = std::exp(log_sum_exp(log_pmf, k, n + 1));
  return std::clamp(2.0 * std::min(lower, upper), 0.0, 1.0);
}

VerificationReport verify(const Corpus& suspect, const Corpus& reference,
                          const WatermarkLexicon& lexicon, const RuleTable& rules) {
  const UnitCounts units = count_units(suspect, lexicon, rules);
  if (units.total.n == 0) {
    throw Error(ErrorCode::ZeroN, "insufficient evidence: suspect corpus has no covered unit");
  }
  VerificationReport report;
  report.k = units.total.k;
  report.n = units.total.n;
  report.per_set = units.per_set;
  report.p = estimate_null_p(reference, lexicon, rules);
  report.p_value = binom_two_tail(report.k, report.n, report.p);
  return report;
}

}  // namespace cater
