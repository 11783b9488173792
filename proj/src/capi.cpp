#include "cater/cater.h"

#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include <json.hpp>

#include "cater/attacks.hpp"
#include "cater/corpus.hpp"
#include "cater/error.hpp"
#include "cater/identifiability.hpp"
#include "cater/lexicon.hpp"
#include "cater/rules.hpp"
#include "cater/serialize.hpp"
#include "cater/stats.hpp"
#include "cater/synth.hpp"
#include "cater/verify.hpp"
#include "cater/watermark.hpp"

namespace {

template <typename T, std::uint32_t Magic>
struct Handle {
  explicit Handle(T v) : value(std::move(v)) {}
  ~Handle() { magic = 0; }
  static constexpr std::uint32_t kMagic = Magic;
  std::uint32_t magic = Magic;
  T value;
};

}  // namespace

struct cater_corpus : Handle<cater::Corpus, 0xC0A9C0A9> {
  using Handle::Handle;
};
struct cater_lexicon : Handle<cater::WatermarkLexicon, 0x1E1C0111> {
  using Handle::Handle;
};
struct cater_rules : Handle<cater::RuleTable, 0x2B1E5000> {
  using Handle::Handle;
};

namespace {

thread_local std::string g_last_error;

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <typename H>
const auto& get(const H* h, const char* name) {
  if (!h) throw NullArgument(std::string("null ") + name);
  if (h->magic != H::kMagic) {
    throw NullArgument(std::string("invalid ") + name + " handle");
  }
  return h->value;
}

template <typename P>
void require(P* p, const char* name) {
  if (!p) throw NullArgument(std::string("null ") + name);
}

// Runs `fn`, translating exceptions into status codes and recording the
// message for cater_last_error().
template <typename F>
int guarded(const char* func, F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const NullArgument& e) {
    g_last_error = std::string(func) + ": " + e.what();
    return CATER_ERR_NULL_POINTER;
  } catch (const cater::Error& e) {
    g_last_error = std::string(func) + ": " + e.what();
    return -static_cast<int>(e.code());
  } catch (const std::exception& e) {
    g_last_error = std::string(func) + ": " + e.what();
    return CATER_ERR_INTERNAL;
  } catch (...) {
    g_last_error = std::string(func) + ": unknown exception";
    return CATER_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = copy_out(s);
}

cater::FeatureSpec to_spec(const cater_feature& f) {
  cater::FeatureSpec spec;
  if (f.kind == CATER_FEATURE_POS) {
    spec.kind = cater::FeatureKind::Pos;
  } else if (f.kind == CATER_FEATURE_DEP) {
    spec.kind = cater::FeatureKind::Dep;
  } else {
    throw cater::Error(cater::ErrorCode::InvalidArgument, "unknown feature kind");
  }
  spec.order = f.order;
  spec.labelset_size = f.labelset_size == 0 ? 36 : f.labelset_size;
  cater::validate_feature_spec(spec);
  return spec;
}

std::string_view view(const char* data, size_t len) {
  if (!data && len) throw NullArgument("null input buffer");
  return data ? std::string_view(data, len) : std::string_view();
}

}  // namespace

extern "C" {

const char* cater_version(void) { return "1.0.0"; }

const char* cater_status_name(int status) {
  switch (status) {
    case CATER_OK: return "OK";
    case CATER_NO_MATCH: return "NoMatch";
    case CATER_ERR_NULL_POINTER: return "NullPointer";
    case CATER_ERR_INTERNAL: return "Internal";
    default:
      if (status < 0 && status >= CATER_ERR_INFEASIBLE_SPEC) {
        return cater::error_code_name(static_cast<cater::ErrorCode>(-status));
      }
      return "Unknown";
  }
}

const char* cater_last_error(void) { return g_last_error.c_str(); }

void cater_string_free(char* s) { std::free(s); }

int cater_corpus_parse(const char* text, size_t len, int pos_column, cater_corpus** out) {
  return guarded(__func__, [&] {
    require(out, "out");
    cater::ParseOptions options;
    options.pos_column =
        pos_column == CATER_POS_XPOS ? cater::PosColumn::Xpos : cater::PosColumn::Upos;
    *out = new cater_corpus(cater::parse_conllu(view(text, len), options));
    return CATER_OK;
  });
}

void cater_corpus_destroy(cater_corpus* corpus) { delete corpus; }

int cater_corpus_sentence_count(const cater_corpus* corpus, size_t* out) {
  return guarded(__func__, [&] {
    require(out, "out");
    *out = get(corpus, "corpus").sentences.size();
    return CATER_OK;
  });
}

int cater_corpus_token_count(const cater_corpus* corpus, size_t* out) {
  return guarded(__func__, [&] {
    require(out, "out");
    size_t n = 0;
    for (const auto& s : get(corpus, "corpus").sentences) n += s.tokens.size();
    *out = n;
    return CATER_OK;
  });
}

int cater_corpus_to_conllu(const cater_corpus* corpus, char** out) {
  return guarded(__func__, [&] {
    require(out, "out");
    emit(out, cater::write_conllu(get(corpus, "corpus")));
    return CATER_OK;
  });
}

int cater_corpus_to_text(const cater_corpus* corpus, char** out) {
  return guarded(__func__, [&] {
    require(out, "out");
    emit(out, cater::render_plaintext(get(corpus, "corpus")));
    return CATER_OK;
  });
}

int cater_lexicon_load(const char* json, size_t len, cater_lexicon** out) {
  return guarded(__func__, [&] {
    require(out, "out");
    *out = new cater_lexicon(cater::load_lexicon(view(json, len)));
    return CATER_OK;
  });
}

void cater_lexicon_destroy(cater_lexicon* lexicon) { delete lexicon; }

int cater_lexicon_set_count(const cater_lexicon* lexicon, size_t* out) {
  return guarded(__func__, [&] {
    require(out, "out");
    *out = get(lexicon, "lexicon").sets().size();
    return CATER_OK;
  });
}

int cater_lexicon_match(const cater_lexicon* lexicon, const char* surface, int* set_id,
                        size_t* word_index) {
  return guarded(__func__, [&] {
    require(surface, "surface");
    const auto ref = get(lexicon, "lexicon").match(surface);
    if (!ref) return static_cast<int>(CATER_NO_MATCH);
    if (set_id) *set_id = ref->set_id;
    if (word_index) *word_index = ref->word_index;
    return static_cast<int>(CATER_OK);
  });
}

int cater_estimate(const cater_corpus* corpus, const cater_lexicon* lexicon,
                   cater_feature feature, char** dist_json) {
  return guarded(__func__, [&] {
    require(dist_json, "dist_json");
    const auto& lex = get(lexicon, "lexicon");
    cater::DistributionFile file;
    file.feature = to_spec(feature);
    for (const auto& counts : cater::count_conditions(get(corpus, "corpus"), lex, file.feature)) {
      if (counts.grand_total() == 0) continue;
      file.sets.push_back(cater::to_distribution(counts, lex.set(counts.set_id()).words));
    }
    emit(dist_json, cater::dump_distributions(file));
    return CATER_OK;
  });
}

void cater_optimizer_config_init(cater_optimizer_config* config) {
  if (!config) return;
  const cater::OptimizerConfig defaults;
  config->alpha = defaults.alpha;
  config->exact_threshold = defaults.exact_threshold;
  config->restarts = defaults.restarts;
  config->max_sweeps = defaults.max_sweeps;
  config->seed = defaults.seed;
  config->top_k = 10;
}

int cater_optimize(const char* dist_json, size_t len, const cater_optimizer_config* config,
                   char** rules_json) {
  return guarded(__func__, [&] {
    require(config, "config");
    require(rules_json, "rules_json");
    cater::OptimizerConfig cfg;
    cfg.alpha = config->alpha;
    cfg.exact_threshold = config->exact_threshold;
    cfg.restarts = config->restarts;
    cfg.max_sweeps = config->max_sweeps;
    cfg.seed = config->seed;
    if (!(cfg.alpha >= 0.0)) {
      throw cater::Error(cater::ErrorCode::InvalidArgument, "alpha must be >= 0");
    }
    const cater::DistributionFile file = cater::load_distributions(view(dist_json, len));
    std::vector<cater::Candidate> candidates;
    for (const auto& dist : file.sets) {
      candidates.push_back(cater::make_candidate(dist, cater::solve(dist, cfg)));
    }
    const cater::RuleTable table =
        cater::rank_and_select(std::move(candidates), config->top_k, file.feature, cfg.alpha);
    emit(rules_json, cater::dump_rules(table));
    return CATER_OK;
  });
}

int cater_convexity(const double* prior, size_t num_conditions, double alpha, size_t num_words,
                    double* min_eigenvalue, double* alpha_threshold, int* convex) {
  return guarded(__func__, [&] {
    require(prior, "prior");
    const auto d = cater::convexity_diagnostic(
        std::vector<double>(prior, prior + num_conditions), alpha, num_words);
    if (min_eigenvalue) *min_eigenvalue = d.min_eigenvalue;
    if (alpha_threshold) *alpha_threshold = d.alpha_threshold;
    if (convex) *convex = d.convex ? 1 : 0;
    return CATER_OK;
  });
}

int cater_rules_load(const char* json, size_t len, cater_rules** out) {
  return guarded(__func__, [&] {
    require(out, "out");
    *out = new cater_rules(cater::load_rules(view(json, len)));
    return CATER_OK;
  });
}

void cater_rules_destroy(cater_rules* rules) { delete rules; }

int cater_rules_to_json(const cater_rules* rules, char** out) {
  return guarded(__func__, [&] {
    require(out, "out");
    emit(out, cater::dump_rules(get(rules, "rules")));
    return CATER_OK;
  });
}

int cater_rules_feature(const cater_rules* rules, cater_feature* out) {
  return guarded(__func__, [&] {
    require(out, "out");
    const auto& f = get(rules, "rules").feature;
    out->kind = f.kind == cater::FeatureKind::Pos ? CATER_FEATURE_POS : CATER_FEATURE_DEP;
    out->order = f.order;
    out->labelset_size = f.labelset_size;
    return CATER_OK;
  });
}

int cater_watermark(const cater_corpus* corpus, const cater_lexicon* lexicon,
                    const cater_rules* rules, const cater_feature* requested, cater_corpus** out,
                    char** log_json) {
  return guarded(__func__, [&] {
    require(out, "out");
    std::optional<cater::FeatureSpec> req;
    if (requested) req = to_spec(*requested);
    auto result = cater::apply(get(corpus, "corpus"), get(lexicon, "lexicon"),
                               get(rules, "rules"), req);
    emit(log_json, cater::dump_application_log(result.log));
    *out = new cater_corpus(std::move(result.corpus));
    return CATER_OK;
  });
}

int cater_watermark_baseline(const cater_corpus* corpus, const cater_lexicon* lexicon,
                             const char* designation_json, size_t len, cater_corpus** out,
                             char** log_json) {
  return guarded(__func__, [&] {
    require(out, "out");
    auto result = cater::apply_unconditional(get(corpus, "corpus"), get(lexicon, "lexicon"),
                                             cater::load_designation(view(designation_json, len)));
    emit(log_json, cater::dump_application_log(result.log));
    *out = new cater_corpus(std::move(result.corpus));
    return CATER_OK;
  });
}

int cater_count_units(const cater_corpus* corpus, const cater_lexicon* lexicon,
                      const cater_rules* rules, uint64_t* k, uint64_t* n) {
  return guarded(__func__, [&] {
    const auto units =
        cater::count_units(get(corpus, "corpus"), get(lexicon, "lexicon"), get(rules, "rules"));
    if (k) *k = units.total.k;
    if (n) *n = units.total.n;
    return CATER_OK;
  });
}

int cater_null_p(const cater_corpus* reference, const cater_lexicon* lexicon,
                 const cater_rules* rules, double* p) {
  return guarded(__func__, [&] {
    require(p, "p");
    *p = cater::estimate_null_p(get(reference, "reference"), get(lexicon, "lexicon"),
                                get(rules, "rules"));
    return CATER_OK;
  });
}

int cater_binom_two_tail(uint64_t k, uint64_t n, double p, double* p_value) {
  return guarded(__func__, [&] {
    require(p_value, "p_value");
    *p_value = cater::binom_two_tail(k, n, p);
    return CATER_OK;
  });
}

int cater_verify(const cater_corpus* suspect, const cater_corpus* reference,
                 const cater_lexicon* lexicon, const cater_rules* rules, cater_verification* out,
                 char** report_json) {
  return guarded(__func__, [&] {
    const auto report = cater::verify(get(suspect, "suspect"), get(reference, "reference"),
                                      get(lexicon, "lexicon"), get(rules, "rules"));
    if (out) *out = {report.k, report.n, report.p, report.p_value};
    emit(report_json, cater::dump_verification(report));
    return CATER_OK;
  });
}

int cater_sparsity_bound(uint64_t feature_size, int order, uint64_t sample_tokens,
                         uint64_t threshold, char** report_json) {
  return guarded(__func__, [&] {
    require(report_json, "report_json");
    emit(report_json,
         cater::dump_sparsity(cater::sparse_support_bound(feature_size, order, sample_tokens, threshold)));
    return CATER_OK;
  });
}

int cater_sparsity_census(const cater_corpus* corpus, const cater_lexicon* lexicon,
                          cater_feature feature, uint64_t threshold, char** report_json) {
  return guarded(__func__, [&] {
    require(report_json, "report_json");
    const auto spec = to_spec(feature);
    const auto census = cater::support_census(get(corpus, "corpus"), get(lexicon, "lexicon"), spec);
    auto report = cater::sparse_support_bound(spec.labelset_size, spec.order, census.units, threshold);
    report.observed_t = census.observed_t(threshold);
    emit(report_json, cater::dump_sparsity(report));
    return CATER_OK;
  });
}

int cater_imbalance_prob(const double* column, size_t len, uint64_t m, double* out) {
  return guarded(__func__, [&] {
    require(column, "column");
    require(out, "out");
    *out = cater::imbalance_prob(std::vector<double>(column, column + len), m);
    return CATER_OK;
  });
}

int cater_suspected_entries(const cater_corpus* corpus, const cater_lexicon* lexicon,
                            cater_feature feature, uint64_t min_support, char** report_json) {
  return guarded(__func__, [&] {
    require(report_json, "report_json");
    emit(report_json, cater::dump_suspects(cater::suspected_entries(
                          get(corpus, "corpus"), get(lexicon, "lexicon"), to_spec(feature),
                          min_support)));
    return CATER_OK;
  });
}

int cater_combinatorial_upper_bound(uint64_t num_sets, uint64_t feature_size, int order,
                                    uint64_t* out) {
  return guarded(__func__, [&] {
    require(out, "out");
    *out = cater::combinatorial_upper_bound(num_sets, feature_size, order);
    return CATER_OK;
  });
}

int cater_attack_frequency(const cater_corpus* reference, const cater_corpus* suspect,
                           const char* const* vocab, size_t vocab_len, size_t top_n,
                           char** report_json) {
  return guarded(__func__, [&] {
    require(report_json, "report_json");
    const auto& ref = get(reference, "reference");
    const auto& sus = get(suspect, "suspect");
    std::set<std::string> words;
    if (vocab_len > 0) {
      require(vocab, "vocab");
      for (size_t i = 0; i < vocab_len; ++i) {
        require(vocab[i], "vocab entry");
        words.insert(cater::to_lower_ascii(vocab[i]));
      }
    } else {
      words = cater::top_vocabulary(ref, sus, top_n);
    }
    emit(report_json, cater::dump_frequency_attack(cater::frequency_attack(ref, sus, words)));
    return CATER_OK;
  });
}

int cater_attack_leakage(const cater_corpus* suspect, const cater_lexicon* lexicon,
                         cater_feature feature, uint64_t min_support, const cater_rules* rules,
                         char** report_json) {
  return guarded(__func__, [&] {
    require(report_json, "report_json");
    const auto suspected = cater::leakage_attack(get(suspect, "suspect"), get(lexicon, "lexicon"),
                                                 to_spec(feature), min_support);
    cater::RuleSet truth;
    if (rules) truth = cater::rule_triples(get(rules, "rules"));
    emit(report_json, cater::dump_leakage(cater::score_leakage(suspected, truth)));
    return CATER_OK;
  });
}

int cater_synth(const char* spec_json, size_t len, cater_corpus** out, char** report_json) {
  return guarded(__func__, [&] {
    require(out, "out");
    const cater::SynthSpec spec = cater::load_synth_spec(view(spec_json, len));
    cater::SynthResult result = cater::generate(spec);
    if (report_json) {
      nlohmann::ordered_json realized = nlohmann::ordered_json::array();
      for (const auto& counts : result.realized) {
        nlohmann::ordered_json conds = nlohmann::ordered_json::object();
        for (const auto& cond : counts.conditions()) conds[cond.key()] = counts.counts(cond);
        realized.push_back({{"id", counts.set_id()}, {"counts", conds}});
      }
      nlohmann::ordered_json doc = {{"sentences", result.corpus.sentences.size()},
                                    {"seed", spec.seed},
                                    {"realized", realized}};
      emit(report_json, doc.dump(2));
    }
    *out = new cater_corpus(std::move(result.corpus));
    return CATER_OK;
  });
}

}  // extern "C"
