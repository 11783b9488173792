/*
 * C interface to the conditional watermarking toolkit.
 *
 * Objects are opaque handles created by *_parse / *_load / producer calls and
 * released with the matching *_destroy. Every function returns CATER_OK (0)
 * or a negative CATER_ERR_* code; the message of the last failure on the
 * calling thread is available from cater_last_error(). Strings handed out
 * through char** parameters are NUL-terminated, heap-allocated, and must be
 * released with cater_string_free().
 */
#ifndef CATER_CATER_H
#define CATER_CATER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define CATER_API __declspec(dllexport)
#else
#  define CATER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum cater_status {
  CATER_OK = 0,
  CATER_NO_MATCH = 1,
  CATER_ERR_INVALID_ARGUMENT = -1,
  CATER_ERR_MALFORMED_LINE = -2,
  CATER_ERR_CYCLE = -3,
  CATER_ERR_MULTIPLE_ROOTS = -4,
  CATER_ERR_FORMAT = -5,
  CATER_ERR_OVERLAP = -6,
  CATER_ERR_SIZE = -7,
  CATER_ERR_INVALID_INDEX = -8,
  CATER_ERR_OVERFLOW = -9,
  CATER_ERR_EMPTY_COUNTS = -10,
  CATER_ERR_SET_MISMATCH = -11,
  CATER_ERR_DIMENSION_MISMATCH = -12,
  CATER_ERR_TOO_LARGE = -13,
  CATER_ERR_EMPTY_CANDIDATES = -14,
  CATER_ERR_FEATURE_MISMATCH = -15,
  CATER_ERR_INVALID_DESIGNATION = -16,
  CATER_ERR_NO_SUPPORT = -17,
  CATER_ERR_INVALID_P = -18,
  CATER_ERR_ZERO_N = -19,
  CATER_ERR_NOT_NORMALIZED = -20,
  CATER_ERR_INFEASIBLE_SPEC = -21,
  CATER_ERR_NULL_POINTER = -100,
  CATER_ERR_INTERNAL = -101
};

enum cater_feature_kind { CATER_FEATURE_POS = 0, CATER_FEATURE_DEP = 1 };
enum cater_pos_column { CATER_POS_UPOS = 0, CATER_POS_XPOS = 1 };

typedef struct cater_feature {
  int kind;               /* cater_feature_kind */
  int order;              /* K >= 1 */
  uint64_t labelset_size; /* |F|, used by the counting analyses */
} cater_feature;

typedef struct cater_optimizer_config {
  double alpha;             /* default 0.01 */
  uint64_t exact_threshold; /* default 2^20 enumerated assignments */
  int restarts;             /* default 16 */
  int max_sweeps;           /* default 100 */
  uint64_t seed;            /* default 0 */
  size_t top_k;             /* default 10 */
} cater_optimizer_config;

typedef struct cater_verification {
  uint64_t k;
  uint64_t n;
  double p;
  double p_value;
} cater_verification;

typedef struct cater_corpus cater_corpus;
typedef struct cater_lexicon cater_lexicon;
typedef struct cater_rules cater_rules;

CATER_API const char* cater_version(void);
CATER_API const char* cater_status_name(int status);
CATER_API const char* cater_last_error(void);
CATER_API void cater_string_free(char* s);

/* Corpora (CoNLL-U) */
CATER_API int cater_corpus_parse(const char* text, size_t len, int pos_column,
                                 cater_corpus** out);
CATER_API void cater_corpus_destroy(cater_corpus* corpus);
CATER_API int cater_corpus_sentence_count(const cater_corpus* corpus, size_t* out);
CATER_API int cater_corpus_token_count(const cater_corpus* corpus, size_t* out);
CATER_API int cater_corpus_to_conllu(const cater_corpus* corpus, char** out);
CATER_API int cater_corpus_to_text(const cater_corpus* corpus, char** out);

/* Lexicon: {"sets":[{"id":0,"words":["help","aid"]}, ...]} */
CATER_API int cater_lexicon_load(const char* json, size_t len, cater_lexicon** out);
CATER_API void cater_lexicon_destroy(cater_lexicon* lexicon);
CATER_API int cater_lexicon_set_count(const cater_lexicon* lexicon, size_t* out);
/* CATER_OK with the match, or CATER_NO_MATCH. */
CATER_API int cater_lexicon_match(const cater_lexicon* lexicon, const char* surface,
                                  int* set_id, size_t* word_index);

/* Estimation: distribution file JSON for every set with observed units. */
CATER_API int cater_estimate(const cater_corpus* corpus, const cater_lexicon* lexicon,
                             cater_feature feature, char** dist_json);

/* Rule optimization and selection: distribution file JSON -> rule table JSON. */
CATER_API void cater_optimizer_config_init(cater_optimizer_config* config);
CATER_API int cater_optimize(const char* dist_json, size_t len,
                             const cater_optimizer_config* config, char** rules_json);
CATER_API int cater_convexity(const double* prior, size_t num_conditions, double alpha,
                              size_t num_words, double* min_eigenvalue,
                              double* alpha_threshold, int* convex);

CATER_API int cater_rules_load(const char* json, size_t len, cater_rules** out);
CATER_API void cater_rules_destroy(cater_rules* rules);
CATER_API int cater_rules_to_json(const cater_rules* rules, char** out);
CATER_API int cater_rules_feature(const cater_rules* rules, cater_feature* out);

/* Watermarking. `requested` may be NULL; when given it must match the
 * feature the rules were built under. */
CATER_API int cater_watermark(const cater_corpus* corpus, const cater_lexicon* lexicon,
                              const cater_rules* rules, const cater_feature* requested,
                              cater_corpus** out, char** log_json);
/* Unconditional baseline; designation is {"<set id>": "word", ...}. */
CATER_API int cater_watermark_baseline(const cater_corpus* corpus,
                                       const cater_lexicon* lexicon,
                                       const char* designation_json, size_t len,
                                       cater_corpus** out, char** log_json);

/* Verification */
CATER_API int cater_count_units(const cater_corpus* corpus, const cater_lexicon* lexicon,
                                const cater_rules* rules, uint64_t* k, uint64_t* n);
CATER_API int cater_null_p(const cater_corpus* reference, const cater_lexicon* lexicon,
                           const cater_rules* rules, double* p);
CATER_API int cater_binom_two_tail(uint64_t k, uint64_t n, double p, double* p_value);
CATER_API int cater_verify(const cater_corpus* suspect, const cater_corpus* reference,
                           const cater_lexicon* lexicon, const cater_rules* rules,
                           cater_verification* out, char** report_json);

/* Identifiability analyses */
CATER_API int cater_sparsity_bound(uint64_t feature_size, int order, uint64_t sample_tokens,
                                   uint64_t threshold, char** report_json);
/* Same report with N and observed_t taken from the corpus census. */
CATER_API int cater_sparsity_census(const cater_corpus* corpus, const cater_lexicon* lexicon,
                                    cater_feature feature, uint64_t threshold,
                                    char** report_json);
CATER_API int cater_imbalance_prob(const double* column, size_t len, uint64_t m,
                                   double* out);
CATER_API int cater_suspected_entries(const cater_corpus* corpus,
                                      const cater_lexicon* lexicon, cater_feature feature,
                                      uint64_t min_support, char** report_json);
CATER_API int cater_combinatorial_upper_bound(uint64_t num_sets, uint64_t feature_size,
                                              int order, uint64_t* out);

/* Attacks. With vocab_len == 0 the vocabulary is the union of the top_n
 * words of both corpora. `rules` may be NULL (no scoring). */
CATER_API int cater_attack_frequency(const cater_corpus* reference, const cater_corpus* suspect,
                                     const char* const* vocab, size_t vocab_len, size_t top_n,
                                     char** report_json);
CATER_API int cater_attack_leakage(const cater_corpus* suspect, const cater_lexicon* lexicon,
                                   cater_feature feature, uint64_t min_support,
                                   const cater_rules* rules, char** report_json);

/* Synthetic corpora from a SynthSpec JSON document. */
CATER_API int cater_synth(const char* spec_json, size_t len, cater_corpus** out,
                          char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* CATER_CATER_H */
