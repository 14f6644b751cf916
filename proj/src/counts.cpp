#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stopforge/measures.hpp"

namespace stopforge {

namespace {

// Plain reference implementation: ordered containers, one document at a
// time. Kept deliberately naive; the parallel kernel must reproduce its
// counts bit for bit.
ScoreTable counts_serial(const Corpus& corpus) {
  std::map<std::string, TermStats> stats;
  std::map<std::string, std::set<std::string>> successors;
  for (const Document& doc : corpus.documents) {
    std::set<std::string> seen;
    const auto& toks = doc.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      TermStats& st = stats[toks[i]];
      st.tf += 1;
      seen.insert(toks[i]);
      if (i + 1 < toks.size()) {
        st.successor_tokens += 1;
        successors[toks[i]].insert(toks[i + 1]);
      }
    }
    for (const std::string& w : seen) stats[w].df += 1;
  }
  ScoreTable table;
  table.doc_count = corpus.doc_count();
  table.rows.reserve(stats.size());
  for (auto& [word, st] : stats) {
    auto it = successors.find(word);
    st.successor_types = it == successors.end() ? 0 : it->second.size();
    ScoreRow row;
    row.word = word;
    row.stats = st;
    table.rows.push_back(std::move(row));
  }
  return table;
}

struct Partial {
  std::vector<std::uint64_t> tf;
  std::vector<std::uint64_t> df;
  std::vector<std::uint32_t> last_doc;  // df marker, per word
  std::unordered_map<std::uint64_t, std::uint64_t> pair_count;  // (a<<32)|b
};

// OpenMP kernel: documents are interned to word ids, split into one
// contiguous chunk per thread, accumulated into thread-local partials and
// merged in thread order. Counts are integer sums, so the result does not
// depend on the partitioning.
ScoreTable counts_parallel(const Corpus& corpus) {
  std::vector<std::string_view> words;
  std::unordered_map<std::string_view, std::uint32_t> word_id;
  std::vector<std::vector<std::uint32_t>> docs(corpus.documents.size());
  std::size_t total_tokens = 0;
  for (const Document& doc : corpus.documents) total_tokens += doc.tokens.size();
  word_id.reserve(total_tokens / 4 + 16);
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& toks = corpus.documents[d].tokens;
    docs[d].reserve(toks.size());
    for (const std::string& tok : toks) {
      auto [it, inserted] = word_id.emplace(tok, static_cast<std::uint32_t>(words.size()));
      if (inserted) words.push_back(tok);
      docs[d].push_back(it->second);
    }
  }
  const std::size_t vocab = words.size();

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (threads < 1) threads = 1;
  std::vector<Partial> partials(static_cast<std::size_t>(threads));

#ifdef _OPENMP
#pragma omp parallel for schedule(static, 1) num_threads(threads)
#endif
  for (int t = 0; t < threads; ++t) {
    Partial& part = partials[static_cast<std::size_t>(t)];
    part.tf.assign(vocab, 0);
    part.df.assign(vocab, 0);
    part.last_doc.assign(vocab, std::numeric_limits<std::uint32_t>::max());
    const std::size_t begin = docs.size() * static_cast<std::size_t>(t) /
                              static_cast<std::size_t>(threads);
    const std::size_t end = docs.size() * (static_cast<std::size_t>(t) + 1) /
                            static_cast<std::size_t>(threads);
    for (std::size_t d = begin; d < end; ++d) {
      const auto& ids = docs[d];
      const auto doc_mark = static_cast<std::uint32_t>(d);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const std::uint32_t w = ids[i];
        part.tf[w] += 1;
        if (part.last_doc[w] != doc_mark) {
          part.last_doc[w] = doc_mark;
          part.df[w] += 1;
        }
        if (i + 1 < ids.size()) {
          const std::uint64_t key =
              (static_cast<std::uint64_t>(w) << 32) | ids[i + 1];
          part.pair_count[key] += 1;
        }
      }
    }
  }

  std::vector<TermStats> stats(vocab);
  std::unordered_map<std::uint64_t, std::uint64_t> pairs;
  for (const Partial& part : partials) {
    for (std::size_t w = 0; w < vocab; ++w) {
      stats[w].tf += part.tf[w];
      stats[w].df += part.df[w];
    }
    for (const auto& [key, count] : part.pair_count) pairs[key] += count;
  }
  for (const auto& [key, count] : pairs) {
    TermStats& st = stats[static_cast<std::size_t>(key >> 32)];
    st.successor_types += 1;
    st.successor_tokens += count;
  }

  ScoreTable table;
  table.doc_count = corpus.doc_count();
  table.rows.resize(vocab);
  for (std::size_t w = 0; w < vocab; ++w) {
    table.rows[w].word = std::string(words[w]);
    table.rows[w].stats = stats[w];
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ScoreRow& a, const ScoreRow& b) { return a.word < b.word; });
  return table;
}

}  // namespace

ScoreTable compute_counts(const Corpus& corpus, CountMode mode) {
  return mode == CountMode::serial ? counts_serial(corpus) : counts_parallel(corpus);
}

}  // namespace stopforge
