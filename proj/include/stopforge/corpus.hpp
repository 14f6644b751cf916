#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stopforge {

// Tokenizer switches. Pure data: two identical configs produce identical
// token sequences for the same input.
struct TokenizerConfig {
  bool lowercase = true;
  bool drop_urls = true;            // drop tokens starting http://, https://, www.
  bool drop_mentions = true;        // drop tokens starting '@'
  bool strip_hashtag_prefix = true; // '#tag' -> 'tag'; when off the '#' is kept
  bool keep_intraword_apostrophe = true;  // "don't" -> "don't" vs "dont"
};

struct Document {
  std::size_t id = 0;  // zero-based position within the corpus
  std::string raw;     // untokenized source text
  std::vector<std::string> tokens;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<std::string> vocabulary;  // sorted, unique

  std::size_t doc_count() const { return documents.size(); }
  bool in_vocabulary(std::string_view word) const;
};

// Splits on Unicode whitespace, then normalizes each chunk: URL/mention
// removal, hashtag prefix stripping, ASCII case folding, and stripping of
// leading/trailing non-alphanumeric characters (apostrophes survive inside
// words, non-ASCII bytes count as word characters). Empty results are
// dropped. Deterministic and idempotent on its own output.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config = {});

enum class CorpusFormat { lines, jsonl };

// lines: one document per non-blank line (CRLF tolerated).
// jsonl: one JSON object per non-blank line; the named field holds the text.
// Throws DataError with a 1-based line number on malformed jsonl records.
Corpus load_corpus(std::istream& in, CorpusFormat format = CorpusFormat::lines,
                   const TokenizerConfig& config = {},
                   std::string_view text_field = "text");

Corpus load_corpus_file(const std::string& path,
                        CorpusFormat format = CorpusFormat::lines,
                        const TokenizerConfig& config = {},
                        std::string_view text_field = "text");

// Builds a corpus from pre-tokenized documents (raw text is the tokens
// joined by single spaces). Used by the synthetic generator and tests.
Corpus corpus_from_token_lists(std::vector<std::vector<std::string>> docs);

// Union of all documents' tokens, sorted unique. The stored vocabulary must
// always equal this.
std::vector<std::string> recompute_vocabulary(const Corpus& corpus);

}  // namespace stopforge
