#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "stopforge/error.hpp"
#include "stopforge/measures.hpp"

namespace stopforge {

namespace {

constexpr std::string_view kHeader =
    "word,tf,df,idf,tf_idf,log_tf_idf,tcf_unique,tcf_total,adjacency,within";

std::string fixed6(double value) {
  if (value == 0.0) value = 0.0;  // never print -0.000000
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

bool parse_u64(std::string_view field, std::uint64_t& out) {
  if (field.empty()) return false;
  std::uint64_t value = 0;
  for (char c : field) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = value;
  return true;
}

bool parse_real(std::string_view field, double& out) {
  std::string buf(field);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end != nullptr && *end == '\0' && end != buf.c_str();
}

}  // namespace

void write_score_csv(std::ostream& out, const ScoreTable& table) {
  out << "# doc_count=" << table.doc_count << '\n';
  out << kHeader << '\n';
  for (const ScoreRow& row : table.rows) {
    out << row.word << ',' << row.stats.tf << ',' << row.stats.df << ','
        << fixed6(row.idf) << ',' << fixed6(row.tf_idf) << ','
        << fixed6(row.log_tf_idf) << ',' << row.stats.successor_types << ','
        << row.stats.successor_tokens << ',' << row.stats.adjacency_freq << ','
        << row.stats.within_freq << '\n';
  }
}

ScoreTable read_score_csv(std::istream& in) {
  ScoreTable table;
  bool doc_count_seen = false;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.rfind("doc_count=", 0) == 0 &&
          parse_u64(body.substr(10), table.doc_count)) {
        doc_count_seen = true;
      }
      continue;
    }
    if (!header_seen) {
      if (line != kHeader)
        throw DataError("score csv: unexpected header at line " +
                        std::to_string(line_no));
      header_seen = true;
      continue;
    }
    // Words may contain commas; the 9 numeric fields are anchored from the
    // right.
    std::array<std::string_view, 9> fields;
    std::string_view rest(line);
    for (std::size_t k = fields.size(); k-- > 0;) {
      std::size_t comma = rest.rfind(',');
      if (comma == std::string_view::npos)
        throw DataError("score csv: too few fields at line " +
                        std::to_string(line_no));
      fields[k] = rest.substr(comma + 1);
      rest = rest.substr(0, comma);
    }
    ScoreRow row;
    row.word = std::string(rest);
    bool ok = !row.word.empty() && parse_u64(fields[0], row.stats.tf) &&
              parse_u64(fields[1], row.stats.df) && parse_real(fields[2], row.idf) &&
              parse_real(fields[3], row.tf_idf) &&
              parse_real(fields[4], row.log_tf_idf) &&
              parse_u64(fields[5], row.stats.successor_types) &&
              parse_u64(fields[6], row.stats.successor_tokens) &&
              parse_u64(fields[7], row.stats.adjacency_freq) &&
              parse_u64(fields[8], row.stats.within_freq);
    if (!ok)
      throw DataError("score csv: malformed row at line " + std::to_string(line_no));
    table.rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("read failure while loading score csv");
  if (!header_seen) throw DataError("score csv: missing header");
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ScoreRow& a, const ScoreRow& b) { return a.word < b.word; });
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (table.rows[i].word == table.rows[i - 1].word)
      throw DataError("score csv: duplicate word '" + table.rows[i].word + "'");
  if (!doc_count_seen) {
    for (const ScoreRow& row : table.rows)
      table.doc_count = std::max(table.doc_count, row.stats.df);
  }
  return table;
}

}  // namespace stopforge
