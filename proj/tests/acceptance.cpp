// End-to-end acceptance suite. Each check prints one [PASS]/[FAIL] line;
// the process exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "oracle.hpp"
#include "stopforge/corpus.hpp"
#include "stopforge/eval.hpp"
#include "stopforge/measures.hpp"
#include "stopforge/stoplist.hpp"
#include "stopforge/synth.hpp"

namespace fs = std::filesystem;
using namespace stopforge;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: oracle equivalence on 200 random corpora -----------------

void criterion_oracle_equivalence() {
  auto start = Clock::now();
  std::mt19937_64 rng(2024);
  bool equal = true;
  for (int trial = 0; trial < 200 && equal; ++trial) {
    Corpus corpus = testutil::random_corpus(rng, 20, 10, 15);
    auto expected = testutil::oracle_counts(corpus);
    for (CountMode mode : {CountMode::serial, CountMode::parallel}) {
      ScoreTable table = compute_counts(corpus, mode);
      if (table.rows.size() != expected.size()) { equal = false; break; }
      for (const ScoreRow& row : table.rows) {
        auto it = expected.find(row.word);
        if (it == expected.end() || row.stats.tf != it->second.tf ||
            row.stats.df != it->second.df ||
            row.stats.successor_types != it->second.successor_types ||
            row.stats.successor_tokens != it->second.successor_tokens) {
          equal = false;
          break;
        }
      }
    }
  }
  double elapsed = seconds_since(start);
  char detail[128];
  std::snprintf(detail, sizeof detail, "200 corpora, %.2f s", elapsed);
  report(1, "counts equal the naive triple-enumeration oracle",
         equal && elapsed < 5.0, detail);
}

// --- criterion 2: worked-example fixture ------------------------------------

void criterion_worked_example() {
  std::istringstream in("the quake hit the city\nthe quake shook the town\n");
  Corpus corpus = load_corpus(in);
  ScoreTable table = build_score_table(corpus);
  auto row_is = [&](const char* word, std::uint64_t tf, std::uint64_t df,
                    std::uint64_t types, std::uint64_t tokens) {
    const ScoreRow* row = table.find(word);
    return row != nullptr && row->stats.tf == tf && row->stats.df == df &&
           row->stats.successor_types == types && row->stats.successor_tokens == tokens;
  };
  bool pass = row_is("the", 4, 2, 3, 4) && row_is("quake", 2, 2, 2, 2) &&
              row_is("city", 1, 1, 0, 0);
  pass = pass && table.find("the")->idf == 0.0;
  pass = pass && std::abs(table.find("city")->idf - std::log(2.0)) <= 1e-9;
  report(2, "worked two-document fixture matches the hand-derived table", pass);
}

// --- criterion 3: duplication law -------------------------------------------

void criterion_duplication_law() {
  std::mt19937_64 rng(99);
  bool pass = true;
  int tested = 0;
  while (tested < 50) {
    Corpus corpus = testutil::random_corpus(rng, 15, 9, 12);
    if (corpus.doc_count() == 0) continue;
    ++tested;
    std::vector<std::vector<std::string>> doubled;
    for (const auto& doc : corpus.documents) doubled.push_back(doc.tokens);
    for (const auto& doc : corpus.documents) doubled.push_back(doc.tokens);
    ScoreTable once = build_score_table(corpus);
    ScoreTable twice = build_score_table(corpus_from_token_lists(std::move(doubled)));
    if (once.rows.size() != twice.rows.size()) { pass = false; break; }
    for (std::size_t i = 0; i < once.rows.size() && pass; ++i) {
      const ScoreRow& a = once.rows[i];
      const ScoreRow& b = twice.rows[i];
      pass = a.word == b.word && b.stats.tf == 2 * a.stats.tf &&
             b.stats.df == 2 * a.stats.df &&
             b.stats.successor_tokens == 2 * a.stats.successor_tokens &&
             b.stats.successor_types == a.stats.successor_types &&
             std::abs(b.idf - a.idf) <= 1e-12;
    }
    if (!pass) break;
  }
  report(3, "corpus+corpus doubles tf/df/successor_tokens, preserves idf and tcf_unique",
         pass, "50 corpora");
}

// --- criterion 4: nesting and monotone recall --------------------------------

void criterion_nesting_and_recall() {
  std::mt19937_64 rng(1001);
  bool pass = true;
  int tested = 0;
  while (tested < 20 && pass) {
    Corpus corpus = testutil::random_corpus(rng, 20, 10, 14);
    if (corpus.doc_count() == 0 || corpus.vocabulary.empty()) continue;
    ++tested;
    ScoreTable table = build_score_table(corpus);
    SweepConfig config;
    config.measures = {Measure::tf, Measure::idf, Measure::tf_idf,
                       Measure::log_tf_idf, Measure::tcf_unique,
                       Measure::tcf_total, Measure::rake};
    config.steps = 10;

    std::vector<std::string> ref_words;
    for (const auto& w : corpus.vocabulary)
      if (rng() % 3 == 0) ref_words.push_back(w);
    if (ref_words.empty()) ref_words.push_back(corpus.vocabulary.front());
    ReferenceList reference{"r", ref_words};

    auto families = sweep(table, config);
    for (const SweepFamily& family : families) {
      for (std::size_t i = 1; i < family.steps.size() && pass; ++i) {
        std::vector<std::string> prev = family.steps[i - 1].list.words;
        std::vector<std::string> next = family.steps[i].list.words;
        std::sort(prev.begin(), prev.end());
        std::sort(next.begin(), next.end());
        pass = std::includes(next.begin(), next.end(), prev.begin(), prev.end());
      }
    }
    auto rows = sweep_report(families, reference);
    for (std::size_t i = 1; i < rows.size() && pass; ++i) {
      if (rows[i].measure != rows[i - 1].measure) continue;
      pass = rows[i].recall >= rows[i - 1].recall;
    }
  }
  report(4, "10-step top-fraction sweeps nest and recall is non-decreasing", pass,
         "20 corpora x 7 measures");
}

// --- criterion 5: planted-stop-word experiment -------------------------------

void criterion_planted_experiment() {
  auto start = Clock::now();
  SynthConfig config;  // seed 42, 2000 docs, 6-12, 20 fw, 500 cw, 1.1, 0.5
  auto [corpus, truth] = synth_generate(config);
  ScoreTable table = build_score_table(corpus);

  StopList top20 = generate_top_fraction(
      table, Measure::tcf_unique, 20.0 / static_cast<double>(table.rows.size()));
  std::set<std::string> planted(truth.planted_stop_words.begin(),
                                truth.planted_stop_words.end());
  std::size_t hits = 0;
  for (const auto& word : top20.words) hits += planted.count(word);
  double precision =
      static_cast<double>(hits) / static_cast<double>(top20.words.size());

  // Full measure-comparison sweep, same shape as a per-threshold F-measure
  // chart over every technique.
  SweepConfig sweep_config;
  sweep_config.measures = {Measure::tf, Measure::idf, Measure::tf_idf,
                           Measure::log_tf_idf, Measure::tcf_unique,
                           Measure::tcf_total, Measure::rake};
  ReferenceList reference{"planted", truth.planted_stop_words};
  auto rows = sweep_report(sweep(table, sweep_config, "synth"), reference);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  std::ofstream out("acceptance_sweep.csv", std::ios::binary | std::ios::trunc);
  out << csv.str();
  out.close();

  double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "top-20 precision %.3f (floor 0.9), %zu sweep rows, %.2f s",
                precision, rows.size(), elapsed);
  report(5, "planted function words dominate the tcf_unique top-20",
         top20.words.size() == 20 && precision >= 0.9 &&
             rows.size() == 7 * 10 && elapsed < 10.0,
         detail);
}

// --- criterion 6: evaluate correctness ---------------------------------------

void criterion_evaluate_oracle() {
  std::mt19937_64 rng(555);
  bool pass = true;
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    auto gen = testutil::random_word_set(rng, 50, 35);
    auto ref_words = testutil::random_word_set(rng, 50, 35);
    ReferenceList reference{"r", ref_words};
    EvalReport report_out = evaluate(gen, reference);

    std::set<std::string> gs(gen.begin(), gen.end());
    std::set<std::string> rs(ref_words.begin(), ref_words.end());
    std::size_t inter = 0;
    for (const auto& w : gs) inter += rs.count(w);
    double precision = gs.empty() ? 0.0 : double(inter) / double(gs.size());
    double recall = rs.empty() ? 0.0 : double(inter) / double(rs.size());
    pass = report_out.intersection_size == inter &&
           report_out.precision == precision && report_out.recall == recall &&
           std::abs(report_out.f1 * (report_out.precision + report_out.recall) -
                    2.0 * report_out.precision * report_out.recall) <= 1e-12;
  }
  report(6, "precision/recall match a set-arithmetic oracle on 1000 pairs", pass);
}

// --- criterion 7: parallel/sequential equivalence ----------------------------

void criterion_parallel_equivalence() {
  SynthConfig config;
  config.seed = 77;
  config.n_docs = 100000;
  config.content_vocab_size = 2000;
  config.function_vocab_size = 40;
  auto [corpus, truth] = synth_generate(config);
  ScoreTable serial = build_score_table(corpus, nullptr, CountMode::serial);
  ScoreTable parallel = build_score_table(corpus, nullptr, CountMode::parallel);
  std::ostringstream serial_csv, parallel_csv;
  write_score_csv(serial_csv, serial);
  write_score_csv(parallel_csv, parallel);
  bool pass = serial_csv.str() == parallel_csv.str();
  char detail[96];
  std::snprintf(detail, sizeof detail, "%zu documents, %zu words",
                corpus.doc_count(), serial.rows.size());
  report(7, "parallel and serial counting emit byte-identical score CSVs", pass,
         detail);
}

// --- criterion 8: CLI determinism and CSV round-trip --------------------------

int run_quiet(const std::string& cmd) {
  int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion_cli_determinism() {
  fs::path dir = fs::temp_directory_path() /
                 ("stopforge_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string bin = STOPFORGE_BIN;
  auto p = [&](const char* name) { return (dir / name).string(); };

  bool pass = true;
  pass &= run_quiet(bin + " synth --seed 5 --docs 400 --out " + p("c.txt") +
                    " --truth " + p("t.txt")) == 0;
  pass &= run_quiet(bin + " analyze --input " + p("c.txt") + " --out " +
                    p("s1.csv")) == 0;
  pass &= run_quiet(bin + " analyze --input " + p("c.txt") + " --out " +
                    p("s2.csv")) == 0;
  pass &= slurp(p("s1.csv")) == slurp(p("s2.csv"));

  pass &= run_quiet(bin + " sweep --scores " + p("s1.csv") +
                    " --measures tf,idf,tf_idf,log_tf_idf,tcf_unique,tcf_total" +
                    " --steps 10 --reference " + p("t.txt") + " --out " +
                    p("r1.csv")) == 0;
  pass &= run_quiet(bin + " sweep --scores " + p("s1.csv") +
                    " --measures tf,idf,tf_idf,log_tf_idf,tcf_unique,tcf_total" +
                    " --steps 10 --reference " + p("t.txt") + " --out " +
                    p("r2.csv")) == 0;
  pass &= slurp(p("r1.csv")) == slurp(p("r2.csv"));
  bool cli_pass = pass;

  // A score table written to CSV and read back drives an identical sweep.
  std::ifstream corpus_in(p("c.txt"), std::ios::binary);
  Corpus corpus = load_corpus(corpus_in);
  ScoreTable direct = build_score_table(corpus);
  std::ostringstream csv;
  write_score_csv(csv, direct);
  std::istringstream csv_in(csv.str());
  ScoreTable reread = read_score_csv(csv_in);
  SweepConfig config;
  config.measures = {Measure::tf, Measure::idf, Measure::tcf_unique};
  ReferenceList reference{"t", {}};
  {
    std::ifstream t_in(p("t.txt"), std::ios::binary);
    reference = load_reference(t_in, "t");
  }
  auto rows_direct = sweep_report(sweep(direct, config), reference);
  auto rows_reread = sweep_report(sweep(reread, config), reference);
  std::ostringstream a, b;
  write_sweep_csv(a, rows_direct);
  write_sweep_csv(b, rows_reread);
  bool roundtrip_pass = a.str() == b.str();

  report(8, "identical CLI invocations and CSV round-trips are byte-stable",
         cli_pass && roundtrip_pass);
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_worked_example();
  criterion_duplication_law();
  criterion_nesting_and_recall();
  criterion_planted_experiment();
  criterion_evaluate_oracle();
  criterion_parallel_equivalence();
  criterion_cli_determinism();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
