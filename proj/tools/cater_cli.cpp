// cater: command-line front end over the C interface.
//
// Exit codes: 0 success, 1 inconclusive or not watermarked (verify only),
// 2 usage or input error, 3 internal error.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cater/cater.h"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail_status(int status, const std::string& what) {
  const int code = (status == CATER_ERR_INTERNAL || status == CATER_ERR_NULL_POINTER)
                       ? kExitInternal
                       : kExitUsage;
  throw Failure{code, what + ": " + cater_status_name(status) + ": " + cater_last_error()};
}

void check(int status, const std::string& what) {
  if (status < 0) fail_status(status, what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kExitUsage, "cannot write " + path};
  out << data;
  if (!out) throw Failure{kExitUsage, "write failed: " + path};
}

struct CString {
  char* ptr = nullptr;
  ~CString() { cater_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct CorpusDeleter {
  void operator()(cater_corpus* c) const { cater_corpus_destroy(c); }
};
struct LexiconDeleter {
  void operator()(cater_lexicon* l) const { cater_lexicon_destroy(l); }
};
struct RulesDeleter {
  void operator()(cater_rules* r) const { cater_rules_destroy(r); }
};
using CorpusPtr = std::unique_ptr<cater_corpus, CorpusDeleter>;
using LexiconPtr = std::unique_ptr<cater_lexicon, LexiconDeleter>;
using RulesPtr = std::unique_ptr<cater_rules, RulesDeleter>;

CorpusPtr load_corpus(const std::string& path, bool xpos) {
  const std::string text = read_file(path);
  cater_corpus* c = nullptr;
  check(cater_corpus_parse(text.data(), text.size(), xpos ? CATER_POS_XPOS : CATER_POS_UPOS, &c),
        path);
  return CorpusPtr(c);
}

LexiconPtr load_lexicon(const std::string& path) {
  const std::string text = read_file(path);
  cater_lexicon* l = nullptr;
  check(cater_lexicon_load(text.data(), text.size(), &l), path);
  return LexiconPtr(l);
}

RulesPtr load_rules(const std::string& path) {
  const std::string text = read_file(path);
  cater_rules* r = nullptr;
  check(cater_rules_load(text.data(), text.size(), &r), path);
  return RulesPtr(r);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CATER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Failure{kExitUsage, std::string("CATER_SEED is not an integer: ") + env};
    }
  }
  return 0;
}

struct FeatureArgs {
  std::string kind = "pos";
  int order = 1;
  std::uint64_t labelset_size = 36;
  bool xpos = false;

  void add_to(CLI::App* cmd, bool with_xpos = true) {
    cmd->add_option("--feature", kind, "Condition feature")
        ->check(CLI::IsMember({"pos", "dep"}))
        ->capture_default_str();
    cmd->add_option("--order", order, "Feature order K")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--labelset-size", labelset_size, "Label set size |F|")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_xpos) cmd->add_flag("--xpos", xpos, "Read POS labels from the XPOS column");
  }

  cater_feature get() const {
    return {kind == "dep" ? CATER_FEATURE_DEP : CATER_FEATURE_POS, order, labelset_size};
  }
};

void print_summary(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string header;
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      header += '\t';
      row += '\t';
    }
    header += fields[i].first;
    row += fields[i].second;
  }
  std::cout << header << '\n' << row << '\n';
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string corpus, lexicon, out;
  FeatureArgs feature;
};

int run_estimate(const EstimateArgs& a) {
  auto corpus = load_corpus(a.corpus, a.feature.xpos);
  auto lex = load_lexicon(a.lexicon);
  CString dist;
  check(cater_estimate(corpus.get(), lex.get(), a.feature.get(), &dist.ptr), "estimate");
  write_file(a.out, dist.str() + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string dist, out;
  double alpha = 0.01;
  std::size_t top_k = 10;
  std::optional<std::uint64_t> seed;
  int restarts = 16;
  int max_sweeps = 100;
  std::uint64_t exact_threshold = std::uint64_t{1} << 20;
};

int run_optimize(const OptimizeArgs& a) {
  const std::string dist = read_file(a.dist);
  cater_optimizer_config cfg;
  cater_optimizer_config_init(&cfg);
  cfg.alpha = a.alpha;
  cfg.top_k = a.top_k;
  cfg.seed = a.seed ? *a.seed : default_seed();
  cfg.restarts = a.restarts;
  cfg.max_sweeps = a.max_sweeps;
  cfg.exact_threshold = a.exact_threshold;
  CString rules;
  check(cater_optimize(dist.data(), dist.size(), &cfg, &rules.ptr), "optimize");
  write_file(a.out, rules.str() + "\n");
  return kExitOk;
}

// --------------------------------------------------------------- watermark

struct WatermarkArgs {
  std::string corpus, lexicon, rules, out, baseline, text, log;
  std::optional<std::string> feature;
  std::optional<int> order;
  bool xpos = false;
};

int run_watermark(const WatermarkArgs& a) {
  auto corpus = load_corpus(a.corpus, a.xpos);
  auto lex = load_lexicon(a.lexicon);
  cater_corpus* out = nullptr;
  CString log;
  if (!a.baseline.empty()) {
    const std::string map = read_file(a.baseline);
    check(cater_watermark_baseline(corpus.get(), lex.get(), map.data(), map.size(), &out,
                                   &log.ptr),
          "watermark");
  } else {
    if (a.rules.empty()) throw Failure{kExitUsage, "watermark: --rules or --baseline is required"};
    auto rules = load_rules(a.rules);
    std::optional<cater_feature> requested;
    if (a.feature || a.order) {
      cater_feature base{};
      check(cater_rules_feature(rules.get(), &base), "watermark");
      if (a.feature) base.kind = *a.feature == "dep" ? CATER_FEATURE_DEP : CATER_FEATURE_POS;
      if (a.order) base.order = *a.order;
      requested = base;
    }
    check(cater_watermark(corpus.get(), lex.get(), rules.get(),
                          requested ? &*requested : nullptr, &out, &log.ptr),
          "watermark");
  }
  CorpusPtr result(out);
  CString conllu;
  check(cater_corpus_to_conllu(result.get(), &conllu.ptr), "watermark");
  write_file(a.out, conllu.str());
  if (!a.text.empty()) {
    CString text;
    check(cater_corpus_to_text(result.get(), &text.ptr), "watermark");
    write_file(a.text, text.str() + "\n");
  }
  if (!a.log.empty()) write_file(a.log, log.str() + "\n");

  const auto doc = ojson::parse(log.str());
  print_summary({{"candidates_seen", std::to_string(doc["candidates_seen"].get<std::uint64_t>())},
                 {"substituted", std::to_string(doc["substituted"].get<std::uint64_t>())},
                 {"unchanged_by_rule", std::to_string(doc["unchanged_by_rule"].get<std::uint64_t>())},
                 {"fallback_identity", std::to_string(doc["fallback_identity"].get<std::uint64_t>())}});
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string suspect, reference, lexicon, rules, report;
  std::uint64_t min_n = 20;
  double threshold = 1e-6;
  bool xpos = false;
};

int run_verify(const VerifyArgs& a) {
  auto suspect = load_corpus(a.suspect, a.xpos);
  auto reference = load_corpus(a.reference, a.xpos);
  auto lex = load_lexicon(a.lexicon);
  auto rules = load_rules(a.rules);

  cater_verification v{};
  CString json;
  const int status = cater_verify(suspect.get(), reference.get(), lex.get(), rules.get(), &v,
                                  &json.ptr);
  ojson doc;
  std::string verdict;
  std::string reason;
  if (status == CATER_ERR_ZERO_N || status == CATER_ERR_NO_SUPPORT ||
      status == CATER_ERR_INVALID_P) {
    std::uint64_t k = 0;
    std::uint64_t n = 0;
    check(cater_count_units(suspect.get(), lex.get(), rules.get(), &k, &n), "verify");
    doc = {{"k", k}, {"n", n}, {"p", nullptr}, {"p_value", nullptr}};
    verdict = "inconclusive";
    reason = std::string("insufficient evidence: ") + cater_last_error();
  } else {
    check(status, "verify");
    doc = ojson::parse(json.str());
    if (v.n < a.min_n) {
      verdict = "inconclusive";
      reason = "insufficient evidence: n=" + std::to_string(v.n) + " below minimum " +
               std::to_string(a.min_n);
    } else if (v.p_value < a.threshold) {
      verdict = "watermarked";
    } else {
      verdict = "not-watermarked";
    }
  }
  doc["threshold"] = a.threshold;
  doc["min_n"] = a.min_n;
  doc["verdict"] = verdict;
  doc["insufficient_evidence"] = verdict == "inconclusive";
  if (!reason.empty()) doc["reason"] = reason;
  if (!a.report.empty()) write_file(a.report, doc.dump(2) + "\n");

  const auto field = [&](const char* key) {
    return doc[key].is_null() ? std::string("NA")
           : doc[key].is_number_float() ? num(doc[key].get<double>())
                                         : doc[key].dump();
  };
  print_summary({{"k", field("k")},
                 {"n", field("n")},
                 {"p", field("p")},
                 {"p_value", field("p_value")},
                 {"verdict", verdict}});
  if (!reason.empty()) std::cerr << reason << '\n';
  return verdict == "watermarked" ? kExitOk : kExitInconclusive;
}

// ----------------------------------------------------------------- analyze

struct SparsityArgs {
  std::string corpus, lexicon, report;
  FeatureArgs feature;
  std::optional<std::uint64_t> tokens;
  std::uint64_t threshold = 1;
};

int run_sparsity(const SparsityArgs& a) {
  CString json;
  if (!a.corpus.empty()) {
    if (a.lexicon.empty()) throw Failure{kExitUsage, "analyze sparsity: --corpus needs --lexicon"};
    auto corpus = load_corpus(a.corpus, a.feature.xpos);
    auto lex = load_lexicon(a.lexicon);
    check(cater_sparsity_census(corpus.get(), lex.get(), a.feature.get(), a.threshold, &json.ptr),
          "analyze sparsity");
  } else {
    if (!a.tokens) throw Failure{kExitUsage, "analyze sparsity: give --corpus or --tokens"};
    check(cater_sparsity_bound(a.feature.labelset_size, a.feature.order, *a.tokens, a.threshold,
                               &json.ptr),
          "analyze sparsity");
  }
  if (!a.report.empty()) write_file(a.report, json.str() + "\n");
  const auto doc = ojson::parse(json.str());
  std::vector<std::pair<std::string, std::string>> fields = {
      {"space_size", doc["space_size"].dump()},
      {"sample_tokens", doc["sample_tokens"].dump()},
      {"threshold", doc["threshold"].dump()},
      {"bound", num(doc["bound"].get<double>())},
      {"precondition_holds", doc["precondition_holds"].dump()}};
  if (doc.contains("observed_t")) fields.emplace_back("observed_t", doc["observed_t"].dump());
  print_summary(fields);
  return kExitOk;
}

struct ImbalanceArgs {
  std::vector<double> column;
  std::vector<std::uint64_t> m;
  std::string report;
};

int run_imbalance(const ImbalanceArgs& a) {
  ojson rows = ojson::array();
  std::cout << "m\timbalance_prob\n";
  for (const std::uint64_t m : a.m) {
    double out = 0.0;
    check(cater_imbalance_prob(a.column.data(), a.column.size(), m, &out), "analyze imbalance");
    rows.push_back({{"m", m}, {"imbalance_prob", out}});
    std::cout << m << '\t' << num(out) << '\n';
  }
  if (!a.report.empty()) {
    write_file(a.report, ojson{{"column", a.column}, {"values", rows}}.dump(2) + "\n");
  }
  return kExitOk;
}

struct SuspectsArgs {
  std::string corpus, lexicon, report;
  FeatureArgs feature;
  std::uint64_t min_support = 1;
};

int run_suspects(const SuspectsArgs& a) {
  auto corpus = load_corpus(a.corpus, a.feature.xpos);
  auto lex = load_lexicon(a.lexicon);
  CString json;
  check(cater_suspected_entries(corpus.get(), lex.get(), a.feature.get(), a.min_support,
                                &json.ptr),
        "analyze suspects");
  if (!a.report.empty()) write_file(a.report, json.str() + "\n");
  std::size_t sets = 0;
  check(cater_lexicon_set_count(lex.get(), &sets), "analyze suspects");
  std::uint64_t upper = 0;
  const int status =
      cater_combinatorial_upper_bound(sets, a.feature.labelset_size, a.feature.order, &upper);
  const auto doc = ojson::parse(json.str());
  print_summary({{"suspected", doc["suspected"].dump()},
                 {"upper_bound", status == CATER_OK ? std::to_string(upper) : "overflow"}});
  return kExitOk;
}

// ------------------------------------------------------------------ attack

struct FreqArgs {
  std::string reference, suspect, report;
  std::vector<std::string> vocab;
  std::size_t top_n = 100;
  std::size_t show = 10;
  bool xpos = false;
};

int run_freq(const FreqArgs& a) {
  auto reference = load_corpus(a.reference, a.xpos);
  auto suspect = load_corpus(a.suspect, a.xpos);
  std::vector<const char*> vocab;
  for (const auto& w : a.vocab) vocab.push_back(w.c_str());
  CString json;
  check(cater_attack_frequency(reference.get(), suspect.get(), vocab.data(), vocab.size(), a.top_n,
                               &json.ptr),
        "attack freq");
  if (!a.report.empty()) write_file(a.report, json.str() + "\n");
  const auto doc = ojson::parse(json.str());
  std::cout << "direction\trank\tword\tratio\treference_count\tsuspect_count\n";
  for (const char* dir : {"decreased", "increased"}) {
    std::size_t rank = 0;
    for (const auto& e : doc[dir]) {
      if (rank >= a.show) break;
      std::cout << dir << '\t' << ++rank << '\t' << e["word"].get<std::string>() << '\t'
                << num(e["ratio"].get<double>()) << '\t' << e["reference_count"] << '\t'
                << e["suspect_count"] << '\n';
    }
  }
  return kExitOk;
}

struct LeakArgs {
  std::string suspect, lexicon, rules, report;
  FeatureArgs feature;
  std::uint64_t min_support = 1;
};

int run_leak(const LeakArgs& a) {
  auto suspect = load_corpus(a.suspect, a.feature.xpos);
  auto lex = load_lexicon(a.lexicon);
  RulesPtr rules;
  if (!a.rules.empty()) rules = load_rules(a.rules);
  CString json;
  check(cater_attack_leakage(suspect.get(), lex.get(), a.feature.get(), a.min_support,
                             rules.get(), &json.ptr),
        "attack leak");
  if (!a.report.empty()) write_file(a.report, json.str() + "\n");
  const auto doc = ojson::parse(json.str());
  std::vector<std::pair<std::string, std::string>> fields = {
      {"suspected", doc["suspected_count"].dump()}};
  if (rules) {
    fields.emplace_back("true_rules", doc["true_rule_count"].dump());
    fields.emplace_back("hits", doc["hits"].dump());
    fields.emplace_back("precision", num(doc["precision"].get<double>()));
    fields.emplace_back("recall", num(doc["recall"].get<double>()));
    fields.emplace_back("confusion_factor", num(doc["confusion_factor"].get<double>()));
  }
  print_summary(fields);
  return kExitOk;
}

// ------------------------------------------------------------------- synth

struct SynthArgs {
  std::string spec, out, report, text;
  std::optional<std::uint64_t> seed;
};

int run_synth(const SynthArgs& a) {
  std::string spec = read_file(a.spec);
  std::optional<std::uint64_t> seed = a.seed;
  if (!seed && std::getenv("CATER_SEED")) seed = default_seed();
  if (seed) {
    ojson doc;
    try {
      doc = ojson::parse(spec);
    } catch (const ojson::parse_error& e) {
      throw Failure{kExitUsage, a.spec + ": " + e.what()};
    }
    doc["seed"] = *seed;
    spec = doc.dump();
  }
  cater_corpus* out = nullptr;
  CString report;
  check(cater_synth(spec.data(), spec.size(), &out, &report.ptr), "synth");
  CorpusPtr corpus(out);
  CString conllu;
  check(cater_corpus_to_conllu(corpus.get(), &conllu.ptr), "synth");
  write_file(a.out, conllu.str());
  if (!a.text.empty()) {
    CString text;
    check(cater_corpus_to_text(corpus.get(), &text.ptr), "synth");
    write_file(a.text, text.str() + "\n");
  }
  if (!a.report.empty()) write_file(a.report, report.str() + "\n");
  return kExitOk;
}

// ------------------------------------------------------------------- binom

struct BinomArgs {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  double p = 0.5;
};

int run_binom(const BinomArgs& a) {
  double pv = 0.0;
  check(cater_binom_two_tail(a.k, a.n, a.p, &pv), "binom");
  print_summary({{"k", std::to_string(a.k)},
                 {"n", std::to_string(a.n)},
                 {"p", num(a.p)},
                 {"p_value", num(pv)}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional lexical watermarking toolkit", "cater"};
  app.set_version_flag("--version", cater_version());
  app.require_subcommand(1);

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Estimate per-set conditional word distributions");
  c_est->add_option("--corpus", est.corpus, "CoNLL-U corpus")->required();
  c_est->add_option("--lexicon", est.lexicon, "Synonym lexicon JSON")->required();
  c_est->add_option("--out", est.out, "Distribution JSON output ('-' for stdout)")->required();
  est.feature.add_to(c_est);

  OptimizeArgs opt;
  auto* c_opt = app.add_subcommand("optimize", "Solve for watermark rules and select sets");
  c_opt->add_option("--dist", opt.dist, "Distribution JSON")->required();
  c_opt->add_option("--out", opt.out, "Rule table JSON output ('-' for stdout)")->required();
  c_opt->add_option("--alpha", opt.alpha, "Weight of the distinctness term")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_opt->add_option("--top-k", opt.top_k, "Number of sets to keep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_opt->add_option("--seed", opt.seed, "Local-search seed (default $CATER_SEED or 0)");
  c_opt->add_option("--restarts", opt.restarts)->check(CLI::PositiveNumber)->capture_default_str();
  c_opt->add_option("--max-sweeps", opt.max_sweeps)->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_opt->add_option("--exact-threshold", opt.exact_threshold,
                    "Largest assignment count solved by enumeration")
      ->capture_default_str();

  WatermarkArgs wm;
  auto* c_wm = app.add_subcommand("watermark", "Apply rules to a corpus");
  c_wm->add_option("--corpus", wm.corpus, "CoNLL-U corpus")->required();
  c_wm->add_option("--lexicon", wm.lexicon, "Synonym lexicon JSON")->required();
  c_wm->add_option("--rules", wm.rules, "Rule table JSON");
  c_wm->add_option("--baseline", wm.baseline, "Unconditional word map JSON {\"set\":\"word\"}");
  c_wm->add_option("--out", wm.out, "Watermarked CoNLL-U output ('-' for stdout)")->required();
  c_wm->add_option("--text", wm.text, "Also write plain text");
  c_wm->add_option("--log", wm.log, "Application log JSON");
  c_wm->add_option("--feature", wm.feature, "Expected rule feature")
      ->check(CLI::IsMember({"pos", "dep"}));
  c_wm->add_option("--order", wm.order, "Expected rule order")->check(CLI::PositiveNumber);
  c_wm->add_flag("--xpos", wm.xpos, "Read POS labels from the XPOS column");
  c_wm->get_option("--rules")->excludes(c_wm->get_option("--baseline"));

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Test a suspect corpus for the watermark");
  c_ver->add_option("--suspect", ver.suspect, "Suspect CoNLL-U corpus")->required();
  c_ver->add_option("--reference", ver.reference, "Unwatermarked reference corpus")->required();
  c_ver->add_option("--lexicon", ver.lexicon, "Synonym lexicon JSON")->required();
  c_ver->add_option("--rules", ver.rules, "Rule table JSON")->required();
  c_ver->add_option("--report", ver.report, "Verification report JSON");
  c_ver->add_option("--min-n", ver.min_n, "Minimum covered units")->capture_default_str();
  c_ver->add_option("--threshold", ver.threshold, "Decision threshold on the p-value")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_ver->add_flag("--xpos", ver.xpos, "Read POS labels from the XPOS column");

  auto* c_an = app.add_subcommand("analyze", "Identifiability analyses");
  c_an->require_subcommand(1);
  SparsityArgs sp;
  auto* c_sp = c_an->add_subcommand("sparsity", "Sparse-condition lower bound");
  c_sp->add_option("--corpus", sp.corpus, "Corpus for an observed census");
  c_sp->add_option("--lexicon", sp.lexicon, "Synonym lexicon JSON");
  c_sp->add_option("--tokens", sp.tokens, "Sample size N when no corpus is given");
  c_sp->add_option("--threshold", sp.threshold, "Support threshold m")->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_sp->add_option("--report", sp.report, "Report JSON");
  sp.feature.add_to(c_sp);
  c_sp->get_option("--corpus")->excludes(c_sp->get_option("--tokens"));

  ImbalanceArgs im;
  auto* c_im = c_an->add_subcommand("imbalance", "Probability that m draws pick one word");
  c_im->add_option("--column", im.column, "Word distribution for one condition")
      ->required()
      ->delimiter(',');
  c_im->add_option("--m", im.m, "Draw counts")->required()->delimiter(',');
  c_im->add_option("--report", im.report, "Report JSON");

  SuspectsArgs su;
  auto* c_su = c_an->add_subcommand("suspects", "Count single-word (sparse) entries");
  c_su->add_option("--corpus", su.corpus, "CoNLL-U corpus")->required();
  c_su->add_option("--lexicon", su.lexicon, "Synonym lexicon JSON")->required();
  c_su->add_option("--min-support", su.min_support)->capture_default_str();
  c_su->add_option("--report", su.report, "Report JSON");
  su.feature.add_to(c_su);

  auto* c_at = app.add_subcommand("attack", "Attacker-side analyses");
  c_at->require_subcommand(1);
  FreqArgs fq;
  auto* c_fq = c_at->add_subcommand("freq", "Word frequency ratio ranking");
  c_fq->add_option("--reference", fq.reference, "Reference CoNLL-U corpus")->required();
  c_fq->add_option("--suspect", fq.suspect, "Suspect CoNLL-U corpus")->required();
  c_fq->add_option("--vocab", fq.vocab, "Explicit vocabulary")->delimiter(',');
  c_fq->add_option("--top-n", fq.top_n, "Vocabulary: top words of each corpus")
      ->capture_default_str();
  c_fq->add_option("--show", fq.show, "Rows printed per direction")->capture_default_str();
  c_fq->add_option("--report", fq.report, "Report JSON");
  c_fq->add_flag("--xpos", fq.xpos, "Read POS labels from the XPOS column");

  LeakArgs lk;
  auto* c_lk = c_at->add_subcommand("leak", "Recover rules from sparse entries");
  c_lk->add_option("--suspect", lk.suspect, "Suspect CoNLL-U corpus")->required();
  c_lk->add_option("--lexicon", lk.lexicon, "Synonym lexicon JSON")->required();
  c_lk->add_option("--rules", lk.rules, "True rules, for scoring");
  c_lk->add_option("--min-support", lk.min_support)->capture_default_str();
  c_lk->add_option("--report", lk.report, "Report JSON");
  lk.feature.add_to(c_lk);

  SynthArgs sy;
  auto* c_sy = app.add_subcommand("synth", "Generate a synthetic tagged corpus");
  c_sy->add_option("--spec", sy.spec, "Generator spec JSON")->required();
  c_sy->add_option("--out", sy.out, "CoNLL-U output ('-' for stdout)")->required();
  c_sy->add_option("--seed", sy.seed, "Override the seed in the synth file");
  c_sy->add_option("--report", sy.report, "Realized counts JSON");
  c_sy->add_option("--text", sy.text, "Also write plain text");

  BinomArgs bi;
  auto* c_bi = app.add_subcommand("binom", "Exact two-tailed binomial p-value");
  c_bi->add_option("--k", bi.k)->required();
  c_bi->add_option("--n", bi.n)->required();
  c_bi->add_option("--p", bi.p)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* failed = &app;
    for (const CLI::App* sub = &app; sub;) {
      const auto subs = sub->get_subcommands();
      if (subs.empty()) break;
      sub = subs.front();
      failed = sub;
    }
    std::cerr << failed->help();
    return kExitUsage;
  }

  try {
    if (c_est->parsed()) return run_estimate(est);
    if (c_opt->parsed()) return run_optimize(opt);
    if (c_wm->parsed()) return run_watermark(wm);
    if (c_ver->parsed()) return run_verify(ver);
    if (c_sp->parsed()) return run_sparsity(sp);
    if (c_im->parsed()) return run_imbalance(im);
    if (c_su->parsed()) return run_suspects(su);
    if (c_fq->parsed()) return run_freq(fq);
    if (c_lk->parsed()) return run_leak(lk);
    if (c_sy->parsed()) return run_synth(sy);
    if (c_bi->parsed()) return run_binom(bi);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  std::cerr << app.help();
  return kExitUsage;
}
