#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stopforge/corpus.hpp"

namespace stopforge {

// Integer counts for one word. Invariants (all exact):
//   df <= tf, df <= doc_count,
//   successor_types <= successor_tokens <= tf.
struct TermStats {
  std::uint64_t tf = 0;  // total occurrences across the corpus
  std::uint64_t df = 0;  // documents containing the word
  std::uint64_t successor_types = 0;   // distinct words seen right after this one
  std::uint64_t successor_tokens = 0;  // total (word, next-word) adjacencies
  std::uint64_t adjacency_freq = 0;    // occurrences adjacent to a keyword phrase
  std::uint64_t within_freq = 0;       // occurrences inside a keyword phrase
};

struct ScoreRow {
  std::string word;
  TermStats stats;
  double idf = 0.0;
  double tf_idf = 0.0;
  double log_tf_idf = 0.0;
};

struct ScoreTable {
  std::uint64_t doc_count = 0;
  std::vector<ScoreRow> rows;  // sorted by word

  const ScoreRow* find(std::string_view word) const;
};

enum class CountMode { serial, parallel };

// Single logical pass over all documents: accumulates tf, df and the
// (word, next-word) adjacency statistics. Adjacencies never cross document
// boundaries; the last token of a document contributes no pair. Successor
// types are deduplicated corpus-wide. The parallel mode processes document
// chunks concurrently and merges integer partials; its result is identical
// to serial mode. Derived real-valued scores are left at zero.
ScoreTable compute_counts(const Corpus& corpus,
                          CountMode mode = CountMode::parallel);

// ln(doc_count / df). Requires 1 <= df <= doc_count.
double idf(std::uint64_t df, std::uint64_t doc_count);

// tf * idf. Requires tf >= 1.
double tf_idf(std::uint64_t tf, double idf_value);

// (1 + ln tf) * idf. Requires tf >= 1.
double log_tf_idf(std::uint64_t tf, double idf_value);

enum class TcfMode { unique, total };

// unique: number of distinct successor words; total: number of successor
// adjacency occurrences.
std::uint64_t tcf(const TermStats& stats, TcfMode mode = TcfMode::unique);

struct KeywordSet {
  std::vector<std::vector<std::string>> phrases;  // non-empty token sequences
};

// One phrase per line, '#' comments allowed, tokenized with the corpus
// config. Throws DataError if no phrase survives.
KeywordSet load_keywords(std::istream& in, const TokenizerConfig& config = {});

// Scans each document for non-overlapping, leftmost-first (longest at ties)
// keyword phrase occurrences. Tokens inside an occurrence count toward
// within_freq; tokens immediately before/after an occurrence that are not
// themselves inside any occurrence count toward adjacency_freq, once per
// adjacency. Returns word -> (adjacency_freq, within_freq) for words with a
// nonzero count.
std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>
rake_frequencies(const Corpus& corpus, const KeywordSet& keywords);

// adjacency - within; higher means more stop-word-like.
std::int64_t rake_score(std::uint64_t adjacency_freq, std::uint64_t within_freq);

// compute_counts + derived idf / tf_idf / log_tf_idf per word, then RAKE
// frequencies when keywords are supplied (zeros otherwise).
ScoreTable build_score_table(const Corpus& corpus,
                             const KeywordSet* keywords = nullptr,
                             CountMode mode = CountMode::parallel);

// CSV layout:
//   # doc_count=N
//   word,tf,df,idf,tf_idf,log_tf_idf,tcf_unique,tcf_total,adjacency,within
// Reals printed with 6 decimal places, '.' decimal point, rows sorted by
// word. The reader accepts words containing commas (numeric fields are
// anchored from the right).
void write_score_csv(std::ostream& out, const ScoreTable& table);
ScoreTable read_score_csv(std::istream& in);

}  // namespace stopforge
