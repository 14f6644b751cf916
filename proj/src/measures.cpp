#include "stopforge/measures.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>
#include <string>

#include "stopforge/error.hpp"

namespace stopforge {

const ScoreRow* ScoreTable::find(std::string_view word) const {
  auto it = std::lower_bound(
      rows.begin(), rows.end(), word,
      [](const ScoreRow& row, std::string_view w) { return row.word < w; });
  if (it == rows.end() || it->word != word) return nullptr;
  return &*it;
}

double idf(std::uint64_t df, std::uint64_t doc_count) {
  if (df == 0 || df > doc_count)
    throw std::invalid_argument("idf requires 1 <= df <= doc_count");
  return std::log(static_cast<double>(doc_count) / static_cast<double>(df));
}

double tf_idf(std::uint64_t tf, double idf_value) {
  if (tf == 0) throw std::invalid_argument("tf_idf requires tf >= 1");
  return static_cast<double>(tf) * idf_value;
}

double log_tf_idf(std::uint64_t tf, double idf_value) {
  if (tf == 0) throw std::invalid_argument("log_tf_idf requires tf >= 1");
  return (1.0 + std::log(static_cast<double>(tf))) * idf_value;
}

std::uint64_t tcf(const TermStats& stats, TcfMode mode) {
  return mode == TcfMode::unique ? stats.successor_types : stats.successor_tokens;
}

std::int64_t rake_score(std::uint64_t adjacency_freq, std::uint64_t within_freq) {
  return static_cast<std::int64_t>(adjacency_freq) -
         static_cast<std::int64_t>(within_freq);
}

KeywordSet load_keywords(std::istream& in, const TokenizerConfig& config) {
  KeywordSet keywords;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> phrase = tokenize(line, config);
    if (!phrase.empty()) keywords.phrases.push_back(std::move(phrase));
  }
  if (in.bad()) throw IoError("read failure while loading keywords");
  if (keywords.phrases.empty()) throw DataError("empty keyword set");
  return keywords;
}

namespace {

// Leftmost-first, non-overlapping; on matches starting at the same position
// the longest phrase wins.
std::size_t longest_match_at(const std::vector<std::string>& tokens, std::size_t pos,
                             const KeywordSet& keywords) {
  std::size_t best = 0;
  for (const auto& phrase : keywords.phrases) {
    if (phrase.size() <= best || pos + phrase.size() > tokens.size()) continue;
    if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + pos))
      best = phrase.size();
  }
  return best;
}

}  // namespace

std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>
rake_frequencies(const Corpus& corpus, const KeywordSet& keywords) {
  if (keywords.phrases.empty()) throw DataError("empty keyword set");
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> freqs;
  std::vector<std::pair<std::size_t, std::size_t>> occurrences;  // [begin, end)
  std::vector<char> within;
  for (const Document& doc : corpus.documents) {
    const auto& toks = doc.tokens;
    occurrences.clear();
    within.assign(toks.size(), 0);
    std::size_t i = 0;
    while (i < toks.size()) {
      std::size_t len = longest_match_at(toks, i, keywords);
      if (len == 0) {
        ++i;
        continue;
      }
      occurrences.emplace_back(i, i + len);
      std::fill(within.begin() + i, within.begin() + i + len, 1);
      i += len;
    }
    for (const auto& [begin, end] : occurrences) {
      for (std::size_t k = begin; k < end; ++k) freqs[toks[k]].second += 1;
      if (begin > 0 && !within[begin - 1]) freqs[toks[begin - 1]].first += 1;
      if (end < toks.size() && !within[end]) freqs[toks[end]].first += 1;
    }
  }
  return freqs;
}

ScoreTable build_score_table(const Corpus& corpus, const KeywordSet* keywords,
                             CountMode mode) {
  ScoreTable table = compute_counts(corpus, mode);
  for (ScoreRow& row : table.rows) {
    row.idf = idf(row.stats.df, table.doc_count);
    row.tf_idf = tf_idf(row.stats.tf, row.idf);
    row.log_tf_idf = log_tf_idf(row.stats.tf, row.idf);
  }
  if (keywords != nullptr) {
    auto freqs = rake_frequencies(corpus, *keywords);
    for (ScoreRow& row : table.rows) {
      auto it = freqs.find(row.word);
      if (it == freqs.end()) continue;
      row.stats.adjacency_freq = it->second.first;
      row.stats.within_freq = it->second.second;
    }
  }
  return table;
}

}  // namespace stopforge
