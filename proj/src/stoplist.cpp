#include "stopforge/stoplist.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "stopforge/error.hpp"

namespace stopforge {

Measure parse_measure(std::string_view name) {
  if (name == "tf") return Measure::tf;
  if (name == "idf") return Measure::idf;
  if (name == "tf_idf") return Measure::tf_idf;
  if (name == "log_tf_idf") return Measure::log_tf_idf;
  if (name == "tcf_unique") return Measure::tcf_unique;
  if (name == "tcf_total") return Measure::tcf_total;
  if (name == "rake") return Measure::rake;
  throw DataError("unknown measure name '" + std::string(name) + "'");
}

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::tf: return "tf";
    case Measure::idf: return "idf";
    case Measure::tf_idf: return "tf_idf";
    case Measure::log_tf_idf: return "log_tf_idf";
    case Measure::tcf_unique: return "tcf_unique";
    case Measure::tcf_total: return "tcf_total";
    case Measure::rake: return "rake";
  }
  return "?";
}

Polarity polarity_of(Measure measure) {
  switch (measure) {
    case Measure::idf:
    case Measure::tf_idf:
    case Measure::log_tf_idf:
      return Polarity::low_is_stopword;
    default:
      return Polarity::high_is_stopword;
  }
}

double measure_score(const ScoreRow& row, Measure measure) {
  switch (measure) {
    case Measure::tf: return static_cast<double>(row.stats.tf);
    case Measure::idf: return row.idf;
    case Measure::tf_idf: return row.tf_idf;
    case Measure::log_tf_idf: return row.log_tf_idf;
    case Measure::tcf_unique: return static_cast<double>(row.stats.successor_types);
    case Measure::tcf_total: return static_cast<double>(row.stats.successor_tokens);
    case Measure::rake:
      return static_cast<double>(
          rake_score(row.stats.adjacency_freq, row.stats.within_freq));
  }
  return 0.0;
}

double stopword_likeness(const ScoreRow& row, Measure measure) {
  double score = measure_score(row, measure);
  return polarity_of(measure) == Polarity::high_is_stopword ? score : -score;
}

namespace {

// Indices of table rows ordered most stop-word-like first; ties broken by
// word to keep the order total and platform-independent.
std::vector<std::size_t> likeness_order(const ScoreTable& table, Measure measure) {
  std::vector<std::size_t> order(table.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> likeness(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    likeness[i] = stopword_likeness(table.rows[i], measure);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (likeness[a] != likeness[b]) return likeness[a] > likeness[b];
    return table.rows[a].word < table.rows[b].word;
  });
  return order;
}

std::size_t top_count(double fraction, std::size_t n) {
  // Guard against binary representation pushing f*n just above an integer.
  double want = fraction * static_cast<double>(n);
  double k = std::ceil(want - 1e-9);
  if (k < 1.0) return 1;
  auto count = static_cast<std::size_t>(k);
  return std::min(count, n);
}

void require_rows(const ScoreTable& table) {
  if (table.rows.empty()) throw DataError("empty score table");
}

}  // namespace

StopList generate_threshold(const ScoreTable& table, Measure measure,
                            double cutoff, std::string_view source) {
  require_rows(table);
  const bool high = polarity_of(measure) == Polarity::high_is_stopword;
  StopList list;
  list.measure = measure_name(measure);
  list.cutoff_mode = "absolute";
  list.cutoff = cutoff;
  list.source = std::string(source);
  for (std::size_t i : likeness_order(table, measure)) {
    double score = measure_score(table.rows[i], measure);
    if (high ? score >= cutoff : score <= cutoff)
      list.words.push_back(table.rows[i].word);
  }
  return list;
}

StopList generate_top_fraction(const ScoreTable& table, Measure measure,
                               double fraction, std::string_view source) {
  require_rows(table);
  if (!(fraction > 0.0) || fraction > 1.0)
    throw DataError("top fraction must lie in (0, 1]");
  StopList list;
  list.measure = measure_name(measure);
  list.cutoff_mode = "top-fraction";
  list.cutoff = fraction;
  list.source = std::string(source);
  std::vector<std::size_t> order = likeness_order(table, measure);
  std::size_t count = top_count(fraction, table.rows.size());
  list.words.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    list.words.push_back(table.rows[order[k]].word);
  return list;
}

std::vector<SweepFamily> sweep(const ScoreTable& table, const SweepConfig& config,
                               std::string_view source) {
  if (config.steps < 2) throw DataError("sweep requires steps >= 2");
  if (!(config.max_fraction > 0.0) || config.max_fraction > 1.0)
    throw DataError("max fraction must lie in (0, 1]");
  std::vector<SweepFamily> families;
  families.reserve(config.measures.size());
  for (Measure measure : config.measures) {
    SweepFamily family;
    family.measure = measure;
    family.mode = config.mode;
    if (config.mode == SweepMode::top_fraction) {
      for (int i = 1; i <= config.steps; ++i) {
        double fraction = config.max_fraction * i / config.steps;
        SweepStep step;
        step.cutoff = fraction;
        step.list = generate_top_fraction(table, measure, fraction, source);
        family.steps.push_back(std::move(step));
      }
    } else {
      require_rows(table);
      double lo = measure_score(table.rows[0], measure);
      double hi = lo;
      for (const ScoreRow& row : table.rows) {
        double s = measure_score(row, measure);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      const bool high = polarity_of(measure) == Polarity::high_is_stopword;
      for (int i = 0; i < config.steps; ++i) {
        double frac = static_cast<double>(i) / (config.steps - 1);
        double cutoff = high ? hi - frac * (hi - lo) : lo + frac * (hi - lo);
        if (i == config.steps - 1) cutoff = high ? lo : hi;  // exact endpoint
        SweepStep step;
        step.cutoff = cutoff;
        step.list = generate_threshold(table, measure, cutoff, source);
        family.steps.push_back(std::move(step));
      }
    }
    families.push_back(std::move(family));
  }
  return families;
}

void write_stoplist(std::ostream& out, const StopList& list) {
  char cutoff[64];
  std::snprintf(cutoff, sizeof cutoff, "%.6f", list.cutoff);
  out << "# measure: " << list.measure << '\n'
      << "# mode: " << list.cutoff_mode << '\n'
      << "# cutoff: " << cutoff << '\n'
      << "# source: " << list.source << '\n';
  for (const std::string& word : list.words) out << word << '\n';
}

std::vector<std::string> read_word_list(std::istream& in) {
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t last = line.find_last_not_of(" \t");
    std::string word = line.substr(first, last - first + 1);
    if (seen.insert(word).second) words.push_back(std::move(word));
  }
  if (in.bad()) throw IoError("read failure while loading word list");
  return words;
}

}  // namespace stopforge
