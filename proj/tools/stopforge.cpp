// stopforge: corpus statistics -> stop-word lists -> evaluation, one
// subcommand per pipeline stage so every intermediate file is inspectable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "stopforge/corpus.hpp"
#include "stopforge/error.hpp"
#include "stopforge/eval.hpp"
#include "stopforge/measures.hpp"
#include "stopforge/stoplist.hpp"
#include "stopforge/synth.hpp"

namespace fs = std::filesystem;
using namespace stopforge;

namespace {

// Missing or inconsistent flags discovered after config overlay.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// file helpers

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

// Full contents to a temp file in the target directory, then rename: the
// declared output either appears complete or not at all.
void write_file_atomic(const std::string& path, const std::string& contents) {
  fs::path target(path);
  fs::path tmp(path + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failure on " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ec2;
    fs::remove(tmp, ec2);
    throw IoError("cannot move " + tmp.string() + " to " + path);
  }
}

std::string stem_of(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  return stem.empty() ? path : stem;
}

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

// ---------------------------------------------------------------------------
// config files: key=value lines, '#' comments, explicit flags win

struct ConfigEntry {
  std::string key;
  std::string value;
};

std::string trim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<ConfigEntry> parse_config_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<ConfigEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = trim_copy(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t eq = stripped.find('=');
    std::string key = eq == std::string::npos ? "" : trim_copy(stripped.substr(0, eq));
    if (key.empty())
      throw DataError("config " + path + ": malformed line " +
                      std::to_string(line_no) + " (expected key=value)");
    entries.push_back({std::move(key), trim_copy(stripped.substr(eq + 1))});
  }
  return entries;
}

class ConfigBinder {
 public:
  explicit ConfigBinder(CLI::App* sub) : sub_(sub) {}

  void add(const std::string& key, std::function<bool(const std::string&)> assign) {
    setters_[key] = std::move(assign);
  }
  void bind(const std::string& key, std::string& var) {
    add(key, [&var](const std::string& v) { var = v; return true; });
  }
  void bind(const std::string& key, bool& var) {
    add(key, [&var](const std::string& v) {
      if (v == "true" || v == "1") { var = true; return true; }
      if (v == "false" || v == "0") { var = false; return true; }
      return false;
    });
  }
  void bind(const std::string& key, int& var) {
    add(key, [&var](const std::string& v) {
      try { std::size_t used; int parsed = std::stoi(v, &used);
            if (used != v.size()) return false; var = parsed; return true; }
      catch (...) { return false; }
    });
  }
  void bind(const std::string& key, std::uint32_t& var) {
    add(key, [&var](const std::string& v) {
      try { std::size_t used; unsigned long parsed = std::stoul(v, &used);
            if (used != v.size() || parsed > 0xFFFFFFFFul) return false;
            var = static_cast<std::uint32_t>(parsed); return true; }
      catch (...) { return false; }
    });
  }
  void bind(const std::string& key, std::uint64_t& var) {
    add(key, [&var](const std::string& v) {
      try { std::size_t used; unsigned long long parsed = std::stoull(v, &used);
            if (used != v.size()) return false; var = parsed; return true; }
      catch (...) { return false; }
    });
  }
  void bind(const std::string& key, double& var) {
    add(key, [&var](const std::string& v) {
      try { std::size_t used; double parsed = std::stod(v, &used);
            if (used != v.size()) return false; var = parsed; return true; }
      catch (...) { return false; }
    });
  }

  // Unknown keys are ignored so one config file can serve several
  // subcommands; bad values for known keys are fatal.
  void apply(const std::vector<ConfigEntry>& entries) const {
    for (const ConfigEntry& entry : entries) {
      auto it = setters_.find(entry.key);
      if (it == setters_.end()) continue;
      const CLI::Option* opt = sub_->get_option_no_throw("--" + entry.key);
      if (opt != nullptr && opt->count() > 0) continue;  // explicit flag wins
      if (!it->second(entry.value))
        throw DataError("config: invalid value for key '" + entry.key + "'");
    }
  }

 private:
  CLI::App* sub_;
  std::map<std::string, std::function<bool(const std::string&)>> setters_;
};

void overlay_config(const std::string& explicit_path, const ConfigBinder& binder) {
  std::string path = explicit_path;
  if (path.empty()) {
    const char* env = std::getenv("STOPFORGE_CONFIG");
    if (env != nullptr) path = env;
  }
  if (path.empty()) return;
  binder.apply(parse_config_file(path));
}

void require_value(const std::string& value, const std::string& flag) {
  if (value.empty()) throw UsageError("missing required " + flag);
}

CorpusFormat parse_format(const std::string& name) {
  if (name == "lines") return CorpusFormat::lines;
  if (name == "jsonl") return CorpusFormat::jsonl;
  throw DataError("unknown corpus format '" + name + "' (expected lines or jsonl)");
}

std::vector<Measure> parse_measure_list(const std::string& csv) {
  std::vector<Measure> measures;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_copy(item);
    if (!item.empty()) measures.push_back(parse_measure(item));
  }
  if (measures.empty()) throw DataError("no measures given");
  return measures;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string input;
  std::string format = "lines";
  std::string text_field = "text";
  std::string keywords;
  std::string out;
  TokenizerConfig tokenizer;
};

void run_analyze(const AnalyzeArgs& args) {
  require_value(args.input, "--input");
  require_value(args.out, "--out");
  CorpusFormat format = parse_format(args.format);

  std::ifstream in = open_input(args.input);
  Corpus corpus = load_corpus(in, format, args.tokenizer, args.text_field);

  std::optional<KeywordSet> keywords;
  if (!args.keywords.empty()) {
    std::ifstream kw = open_input(args.keywords);
    keywords = load_keywords(kw, args.tokenizer);
  }

  ScoreTable table =
      build_score_table(corpus, keywords ? &*keywords : nullptr);
  std::ostringstream csv;
  write_score_csv(csv, table);
  write_file_atomic(args.out, csv.str());
  std::cout << "analyze: " << corpus.doc_count() << " documents, "
            << table.rows.size() << " words -> " << args.out << "\n";
}

// ---------------------------------------------------------------------------
// stoplist

struct StoplistArgs {
  std::string scores;
  std::string measure;
  std::string out;
  double top_fraction = 0.0;
  double threshold = 0.0;
  bool have_top_fraction = false;
  bool have_threshold = false;
};

void run_stoplist(const StoplistArgs& args) {
  require_value(args.scores, "--scores");
  require_value(args.measure, "--measure");
  require_value(args.out, "--out");
  if (args.have_top_fraction == args.have_threshold)
    throw UsageError("exactly one of --top-fraction or --threshold is required");
  Measure measure = parse_measure(args.measure);

  std::ifstream in = open_input(args.scores);
  ScoreTable table = read_score_csv(in);
  StopList list = args.have_top_fraction
                      ? generate_top_fraction(table, measure, args.top_fraction,
                                              args.scores)
                      : generate_threshold(table, measure, args.threshold,
                                           args.scores);
  std::ostringstream body;
  write_stoplist(body, list);
  write_file_atomic(args.out, body.str());
  std::cout << "stoplist: " << list.measure << " " << list.cutoff_mode << " "
            << fixed6(list.cutoff) << " -> " << list.words.size()
            << " words -> " << args.out << "\n";
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string scores;
  std::string measures;
  std::string reference;
  std::string out;
  std::string mode = "top-fraction";
  int steps = 10;
  double max_fraction = 0.5;
  bool vocab_restrict = false;
};

void run_sweep(const SweepArgs& args) {
  require_value(args.scores, "--scores");
  require_value(args.measures, "--measures");
  require_value(args.reference, "--reference");
  require_value(args.out, "--out");

  SweepConfig config;
  config.measures = parse_measure_list(args.measures);
  config.steps = args.steps;
  config.max_fraction = args.max_fraction;
  if (args.mode == "top-fraction") config.mode = SweepMode::top_fraction;
  else if (args.mode == "absolute") config.mode = SweepMode::absolute;
  else throw DataError("unknown sweep mode '" + args.mode + "'");
  if (config.steps < 2) throw DataError("sweep requires steps >= 2");
  if (!(config.max_fraction > 0.0) || config.max_fraction > 1.0)
    throw DataError("max fraction must lie in (0, 1]");

  std::ifstream scores_in = open_input(args.scores);
  ScoreTable table = read_score_csv(scores_in);
  std::ifstream ref_in = open_input(args.reference);
  ReferenceList reference = load_reference(ref_in, stem_of(args.reference));
  if (args.vocab_restrict) {
    std::vector<std::string> vocab;
    vocab.reserve(table.rows.size());
    for (const ScoreRow& row : table.rows) vocab.push_back(row.word);
    reference = restrict_to_vocabulary(reference, vocab);
  }

  auto families = sweep(table, config, args.scores);
  auto rows = sweep_report(families, reference);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_file_atomic(args.out, csv.str());

  BestCutoff by_precision = best_cutoff(rows, BestCriterion::precision);
  BestCutoff by_f1 = best_cutoff(rows, BestCriterion::f1);
  std::cout << "sweep: " << rows.size() << " rows -> " << args.out
            << " (best precision " << fixed6(rows[by_precision.row].precision)
            << " at " << by_precision.measure << " " << fixed6(by_precision.cutoff)
            << "; best f1 " << fixed6(rows[by_f1.row].f1) << " at "
            << by_f1.measure << " " << fixed6(by_f1.cutoff) << ")\n";
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string list;
  std::string reference;
  std::string input;
  std::string format = "lines";
  std::string text_field = "text";
  std::string out;
  bool vocab_restrict = false;
};

void run_eval(const EvalArgs& args) {
  require_value(args.list, "--list");
  require_value(args.reference, "--reference");
  require_value(args.out, "--out");
  if (args.vocab_restrict && args.input.empty())
    throw UsageError("--vocab-restrict requires --input");
  CorpusFormat format = parse_format(args.format);

  std::ifstream list_in = open_input(args.list);
  std::vector<std::string> generated = read_word_list(list_in);
  std::ifstream ref_in = open_input(args.reference);
  ReferenceList reference = load_reference(ref_in, stem_of(args.reference));
  if (args.vocab_restrict) {
    std::ifstream corpus_in = open_input(args.input);
    Corpus corpus = load_corpus(corpus_in, format, {}, args.text_field);
    reference = restrict_to_vocabulary(reference, corpus.vocabulary);
  }

  EvalReport report = evaluate(generated, reference);
  write_file_atomic(args.out,
                    eval_report_json(report, reference.name, args.vocab_restrict));
  if (report.empty_generated)
    std::cerr << "warning: generated list is empty\n";
  if (report.empty_reference)
    std::cerr << "warning: reference list is empty after vocabulary restriction\n";
  std::cout << "eval: precision " << fixed6(report.precision) << " recall "
            << fixed6(report.recall) << " f1 " << fixed6(report.f1) << " -> "
            << args.out << "\n";
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  SynthConfig config;
  std::string out;
  std::string truth;
};

void run_synth(const SynthArgs& args) {
  require_value(args.out, "--out");
  require_value(args.truth, "--truth");

  auto [corpus, truth] = synth_generate(args.config);
  std::string corpus_text;
  for (const Document& doc : corpus.documents) {
    corpus_text += doc.raw;
    corpus_text.push_back('\n');
  }
  write_file_atomic(args.out, corpus_text);

  std::string truth_text = "# planted function vocabulary\n# seed: " +
                           std::to_string(args.config.seed) + "\n";
  for (const std::string& word : truth.planted_stop_words) {
    truth_text += word;
    truth_text.push_back('\n');
  }
  write_file_atomic(args.truth, truth_text);
  std::cout << "synth: " << corpus.doc_count() << " documents, "
            << truth.planted_stop_words.size() << " function words -> "
            << args.out << ", " << args.truth << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus statistics and stop-word list toolkit"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  std::string analyze_config;
  auto* analyze = app.add_subcommand(
      "analyze", "tokenize a corpus and write the per-word score table");
  analyze->add_option("--input", analyze_args.input, "corpus file");
  analyze->add_option("--format", analyze_args.format, "lines or jsonl");
  analyze->add_option("--text-field", analyze_args.text_field,
                      "jsonl field holding the text");
  analyze->add_option("--keywords", analyze_args.keywords,
                      "keyword phrases for the rake frequencies");
  analyze->add_option("--out", analyze_args.out, "score table csv");
  analyze->add_flag("--lowercase,!--no-lowercase", analyze_args.tokenizer.lowercase,
                    "fold tokens to lower case");
  analyze->add_flag("--drop-urls,!--no-drop-urls", analyze_args.tokenizer.drop_urls,
                    "drop url tokens");
  analyze->add_flag("--drop-mentions,!--no-drop-mentions",
                    analyze_args.tokenizer.drop_mentions, "drop @mention tokens");
  analyze->add_flag("--strip-hashtag-prefix,!--no-strip-hashtag-prefix",
                    analyze_args.tokenizer.strip_hashtag_prefix,
                    "strip the leading # from hashtags");
  analyze->add_flag("--keep-intraword-apostrophe,!--no-keep-intraword-apostrophe",
                    analyze_args.tokenizer.keep_intraword_apostrophe,
                    "keep apostrophes inside words");
  analyze->add_option("--config", analyze_config, "key=value config file");
  ConfigBinder analyze_binder(analyze);
  analyze_binder.bind("input", analyze_args.input);
  analyze_binder.bind("format", analyze_args.format);
  analyze_binder.bind("text-field", analyze_args.text_field);
  analyze_binder.bind("keywords", analyze_args.keywords);
  analyze_binder.bind("out", analyze_args.out);
  analyze_binder.bind("lowercase", analyze_args.tokenizer.lowercase);
  analyze_binder.bind("drop-urls", analyze_args.tokenizer.drop_urls);
  analyze_binder.bind("drop-mentions", analyze_args.tokenizer.drop_mentions);
  analyze_binder.bind("strip-hashtag-prefix",
                      analyze_args.tokenizer.strip_hashtag_prefix);
  analyze_binder.bind("keep-intraword-apostrophe",
                      analyze_args.tokenizer.keep_intraword_apostrophe);

  StoplistArgs stoplist_args;
  std::string stoplist_config;
  auto* stoplist = app.add_subcommand(
      "stoplist", "cut one stop-word list from a score table");
  stoplist->add_option("--scores", stoplist_args.scores, "score table csv");
  stoplist->add_option("--measure", stoplist_args.measure,
                       "tf, idf, tf_idf, log_tf_idf, tcf_unique, tcf_total or rake");
  auto* tf_opt = stoplist->add_option("--top-fraction", stoplist_args.top_fraction,
                                      "keep the top fraction of the vocabulary");
  auto* th_opt = stoplist->add_option("--threshold", stoplist_args.threshold,
                                      "absolute score cutoff");
  stoplist->add_option("--out", stoplist_args.out, "stop-word list file");
  stoplist->add_option("--config", stoplist_config, "key=value config file");
  ConfigBinder stoplist_binder(stoplist);
  stoplist_binder.bind("scores", stoplist_args.scores);
  stoplist_binder.bind("measure", stoplist_args.measure);
  stoplist_binder.add("top-fraction", [&](const std::string& v) {
    try { std::size_t used; stoplist_args.top_fraction = std::stod(v, &used);
          if (used != v.size()) return false;
          stoplist_args.have_top_fraction = true; return true; }
    catch (...) { return false; }
  });
  stoplist_binder.add("threshold", [&](const std::string& v) {
    try { std::size_t used; stoplist_args.threshold = std::stod(v, &used);
          if (used != v.size()) return false;
          stoplist_args.have_threshold = true; return true; }
    catch (...) { return false; }
  });
  stoplist_binder.bind("out", stoplist_args.out);

  SweepArgs sweep_args;
  std::string sweep_config;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "generate list families per measure and score them");
  sweep_cmd->add_option("--scores", sweep_args.scores, "score table csv");
  sweep_cmd->add_option("--measures", sweep_args.measures,
                        "comma-separated measure names");
  sweep_cmd->add_option("--steps", sweep_args.steps, "cutoffs per measure (>= 2)");
  sweep_cmd->add_option("--mode", sweep_args.mode, "top-fraction or absolute");
  sweep_cmd->add_option("--max-fraction", sweep_args.max_fraction,
                        "most liberal fraction in top-fraction mode");
  sweep_cmd->add_option("--reference", sweep_args.reference, "reference stop list");
  sweep_cmd->add_flag("--vocab-restrict", sweep_args.vocab_restrict,
                      "intersect the reference with the score table vocabulary");
  sweep_cmd->add_option("--out", sweep_args.out, "sweep report csv");
  sweep_cmd->add_option("--config", sweep_config, "key=value config file");
  ConfigBinder sweep_binder(sweep_cmd);
  sweep_binder.bind("scores", sweep_args.scores);
  sweep_binder.bind("measures", sweep_args.measures);
  sweep_binder.bind("steps", sweep_args.steps);
  sweep_binder.bind("mode", sweep_args.mode);
  sweep_binder.bind("max-fraction", sweep_args.max_fraction);
  sweep_binder.bind("reference", sweep_args.reference);
  sweep_binder.bind("vocab-restrict", sweep_args.vocab_restrict);
  sweep_binder.bind("out", sweep_args.out);

  EvalArgs eval_args;
  std::string eval_config;
  auto* eval_cmd = app.add_subcommand(
      "eval", "score a stop-word list against a reference list");
  eval_cmd->add_option("--list", eval_args.list, "generated stop-word list");
  eval_cmd->add_option("--reference", eval_args.reference, "reference stop list");
  eval_cmd->add_flag("--vocab-restrict", eval_args.vocab_restrict,
                     "intersect the reference with the corpus vocabulary");
  eval_cmd->add_option("--input", eval_args.input,
                       "corpus file (required by --vocab-restrict)");
  eval_cmd->add_option("--format", eval_args.format, "lines or jsonl");
  eval_cmd->add_option("--text-field", eval_args.text_field,
                       "jsonl field holding the text");
  eval_cmd->add_option("--out", eval_args.out, "report json");
  eval_cmd->add_option("--config", eval_config, "key=value config file");
  ConfigBinder eval_binder(eval_cmd);
  eval_binder.bind("list", eval_args.list);
  eval_binder.bind("reference", eval_args.reference);
  eval_binder.bind("vocab-restrict", eval_args.vocab_restrict);
  eval_binder.bind("input", eval_args.input);
  eval_binder.bind("format", eval_args.format);
  eval_binder.bind("text-field", eval_args.text_field);
  eval_binder.bind("out", eval_args.out);

  SynthArgs synth_args;
  std::string synth_config;
  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic corpus with planted function words");
  synth->add_option("--seed", synth_args.config.seed, "rng seed");
  synth->add_option("--docs", synth_args.config.n_docs, "number of documents");
  synth->add_option("--out", synth_args.out, "corpus file (lines format)");
  synth->add_option("--truth", synth_args.truth, "planted word list file");
  synth->add_option("--len-min", synth_args.config.doc_len_min,
                    "content words per document, lower bound");
  synth->add_option("--len-max", synth_args.config.doc_len_max,
                    "content words per document, upper bound");
  synth->add_option("--function-words", synth_args.config.function_vocab_size,
                    "function vocabulary size");
  synth->add_option("--content-words", synth_args.config.content_vocab_size,
                    "content vocabulary size");
  synth->add_option("--zipf-exponent", synth_args.config.zipf_exponent,
                    "content word skew (> 0)");
  synth->add_option("--connector-prob", synth_args.config.connector_probability,
                    "per-gap insertion probability, in [0, 1]");
  synth->add_option("--config", synth_config, "key=value config file");
  ConfigBinder synth_binder(synth);
  synth_binder.bind("seed", synth_args.config.seed);
  synth_binder.bind("docs", synth_args.config.n_docs);
  synth_binder.bind("out", synth_args.out);
  synth_binder.bind("truth", synth_args.truth);
  synth_binder.bind("len-min", synth_args.config.doc_len_min);
  synth_binder.bind("len-max", synth_args.config.doc_len_max);
  synth_binder.bind("function-words", synth_args.config.function_vocab_size);
  synth_binder.bind("content-words", synth_args.config.content_vocab_size);
  synth_binder.bind("zipf-exponent", synth_args.config.zipf_exponent);
  synth_binder.bind("connector-prob", synth_args.config.connector_probability);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      overlay_config(analyze_config, analyze_binder);
      run_analyze(analyze_args);
    } else if (stoplist->parsed()) {
      stoplist_args.have_top_fraction = tf_opt->count() > 0;
      stoplist_args.have_threshold = th_opt->count() > 0;
      overlay_config(stoplist_config, stoplist_binder);
      run_stoplist(stoplist_args);
    } else if (sweep_cmd->parsed()) {
      overlay_config(sweep_config, sweep_binder);
      run_sweep(sweep_args);
    } else if (eval_cmd->parsed()) {
      overlay_config(eval_config, eval_binder);
      run_eval(eval_args);
    } else if (synth->parsed()) {
      overlay_config(synth_config, synth_binder);
      run_synth(synth_args);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
