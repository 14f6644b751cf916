// Times the serial reference counting kernel against the OpenMP one on a
// synthetic corpus and checks that they produce identical tables.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "stopforge/measures.hpp"
#include "stopforge/synth.hpp"

using namespace stopforge;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const Corpus& corpus, CountMode mode) {
  auto start = Clock::now();
  ScoreTable table = compute_counts(corpus, mode);
  auto stop = Clock::now();
  // keep the optimizer honest
  volatile std::uint64_t sink = table.rows.empty() ? 0 : table.rows[0].stats.tf;
  (void)sink;
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

bool tables_equal(const ScoreTable& a, const ScoreTable& b) {
  if (a.doc_count != b.doc_count || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const ScoreRow& x = a.rows[i];
    const ScoreRow& y = b.rows[i];
    if (x.word != y.word || x.stats.tf != y.stats.tf || x.stats.df != y.stats.df ||
        x.stats.successor_types != y.stats.successor_types ||
        x.stats.successor_tokens != y.stats.successor_tokens)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t docs = 200000;
  int reps = 3;
  CLI::App app{"counting kernel benchmark"};
  app.add_option("--docs", docs, "synthetic corpus size");
  app.add_option("--reps", reps, "timed repetitions per kernel");
  CLI11_PARSE(app, argc, argv);

  SynthConfig config;
  config.seed = 1234;
  config.n_docs = docs;
  config.content_vocab_size = 5000;
  config.function_vocab_size = 50;
  auto [corpus, truth] = synth_generate(config);
  std::size_t tokens = 0;
  for (const auto& doc : corpus.documents) tokens += doc.tokens.size();

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("counts benchmark: %zu docs, %zu tokens, %zu words, %d threads\n",
              corpus.doc_count(), tokens, corpus.vocabulary.size(), threads);

  ScoreTable serial_table = compute_counts(corpus, CountMode::serial);
  ScoreTable parallel_table = compute_counts(corpus, CountMode::parallel);
  if (!tables_equal(serial_table, parallel_table)) {
    std::printf("FAIL: kernels disagree\n");
    return 1;
  }

  double best_serial = 1e300, best_parallel = 1e300;
  for (int r = 0; r < reps; ++r) {
    double ms = run_ms(corpus, CountMode::serial);
    std::printf("  serial   rep %d: %9.2f ms\n", r + 1, ms);
    best_serial = std::min(best_serial, ms);
  }
  for (int r = 0; r < reps; ++r) {
    double ms = run_ms(corpus, CountMode::parallel);
    std::printf("  parallel rep %d: %9.2f ms\n", r + 1, ms);
    best_parallel = std::min(best_parallel, ms);
  }
  std::printf("kernels agree; best serial %.2f ms, best parallel %.2f ms, "
              "speedup %.2fx\n",
              best_serial, best_parallel, best_serial / best_parallel);
  return 0;
}
