#include "stopforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "stopforge/error.hpp"

namespace stopforge {

namespace {

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Decodes one UTF-8 code point at `i`; advances `i` past it. Bad sequences
// are consumed byte-wise and returned as-is so tokenization never stalls.
char32_t decode_utf8(std::string_view text, std::size_t& i) {
  unsigned char b0 = static_cast<unsigned char>(text[i]);
  std::size_t len = 1;
  char32_t cp = b0;
  if (b0 >= 0xF0) { len = 4; cp = b0 & 0x07u; }
  else if (b0 >= 0xE0) { len = 3; cp = b0 & 0x0Fu; }
  else if (b0 >= 0xC0) { len = 2; cp = b0 & 0x1Fu; }
  if (len == 1 || i + len > text.size()) { ++i; return b0 < 0x80 ? cp : 0xFFFD; }
  for (std::size_t k = 1; k < len; ++k) {
    unsigned char bk = static_cast<unsigned char>(text[i + k]);
    if ((bk & 0xC0u) != 0x80u) { ++i; return 0xFFFD; }
    cp = (cp << 6) | (bk & 0x3Fu);
  }
  i += len;
  return cp;
}

bool is_word_byte(unsigned char c) {
  // Non-ASCII bytes count as word characters.
  return c >= 0x80 || std::isalnum(c) != 0;
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool starts_with_ci(std::string_view chunk, std::string_view prefix) {
  if (chunk.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (ascii_lower(chunk[i]) != prefix[i]) return false;
  return true;
}

bool url_like(std::string_view s) {
  return starts_with_ci(s, "http://") || starts_with_ci(s, "https://") ||
         starts_with_ci(s, "www.");
}

// Normalizes one whitespace-free chunk; returns an empty string when the
// chunk should be dropped. The URL test runs against the fully stripped
// core so that stripping can never expose a URL that a second tokenization
// pass would then drop (idempotence).
std::string normalize_chunk(std::string_view chunk, const TokenizerConfig& config) {
  if (chunk.empty()) return {};
  if (config.drop_urls && url_like(chunk)) return {};
  std::string sigil;
  if (chunk.front() == '@') {
    if (config.drop_mentions) return {};
    sigil = "@";  // mention kept intact
    chunk.remove_prefix(1);
  } else if (chunk.front() == '#') {
    if (!config.strip_hashtag_prefix) sigil = "#";
    chunk.remove_prefix(1);
  }

  std::size_t begin = 0, end = chunk.size();
  while (begin < end && !is_word_byte(static_cast<unsigned char>(chunk[begin]))) ++begin;
  while (end > begin && !is_word_byte(static_cast<unsigned char>(chunk[end - 1]))) --end;

  std::string core;
  core.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    char c = chunk[i];
    if (c == '\'' && !config.keep_intraword_apostrophe) continue;
    core.push_back(config.lowercase ? ascii_lower(c) : c);
  }
  if (core.empty()) return {};
  if (config.drop_urls && sigil.empty() && url_like(core)) return {};
  return sigil + core;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

void finalize(Corpus& corpus) {
  corpus.vocabulary = recompute_vocabulary(corpus);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  std::size_t chunk_begin = 0;
  bool in_chunk = false;
  auto flush = [&](std::size_t chunk_end) {
    if (!in_chunk) return;
    std::string token =
        normalize_chunk(text.substr(chunk_begin, chunk_end - chunk_begin), config);
    if (!token.empty()) tokens.push_back(std::move(token));
    in_chunk = false;
  };
  while (i < text.size()) {
    std::size_t at = i;
    char32_t cp = decode_utf8(text, i);
    if (is_unicode_space(cp)) {
      flush(at);
    } else if (!in_chunk) {
      in_chunk = true;
      chunk_begin = at;
    }
  }
  flush(text.size());
  return tokens;
}

bool Corpus::in_vocabulary(std::string_view word) const {
  return std::binary_search(vocabulary.begin(), vocabulary.end(), word);
}

std::vector<std::string> recompute_vocabulary(const Corpus& corpus) {
  std::vector<std::string> vocab;
  for (const Document& doc : corpus.documents)
    vocab.insert(vocab.end(), doc.tokens.begin(), doc.tokens.end());
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  return vocab;
}

Corpus load_corpus(std::istream& in, CorpusFormat format,
                   const TokenizerConfig& config, std::string_view text_field) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::string text;
    if (format == CorpusFormat::lines) {
      text = line;
    } else {
      nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
      if (record.is_discarded())
        throw DataError("malformed JSON record at line " + std::to_string(line_no));
      if (!record.is_object() || !record.contains(text_field))
        throw DataError("missing text field '" + std::string(text_field) +
                        "' at line " + std::to_string(line_no));
      const auto& value = record[std::string(text_field)];
      if (!value.is_string())
        throw DataError("text field '" + std::string(text_field) +
                        "' is not a string at line " + std::to_string(line_no));
      text = value.get<std::string>();
    }

    Document doc;
    doc.id = corpus.documents.size();
    doc.tokens = tokenize(text, config);
    doc.raw = std::move(text);
    corpus.documents.push_back(std::move(doc));
  }
  if (in.bad()) throw IoError("read failure while loading corpus");
  finalize(corpus);
  return corpus;
}

Corpus load_corpus_file(const std::string& path, CorpusFormat format,
                        const TokenizerConfig& config, std::string_view text_field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return load_corpus(in, format, config, text_field);
}

Corpus corpus_from_token_lists(std::vector<std::vector<std::string>> docs) {
  Corpus corpus;
  corpus.documents.reserve(docs.size());
  for (auto& tokens : docs) {
    Document doc;
    doc.id = corpus.documents.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) doc.raw.push_back(' ');
      doc.raw += tokens[i];
    }
    doc.tokens = std::move(tokens);
    corpus.documents.push_back(std::move(doc));
  }
  finalize(corpus);
  return corpus;
}

}  // namespace stopforge
