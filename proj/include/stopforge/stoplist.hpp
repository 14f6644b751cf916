#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stopforge/measures.hpp"

namespace stopforge {

enum class Measure { tf, idf, tf_idf, log_tf_idf, tcf_unique, tcf_total, rake };

enum class Polarity { high_is_stopword, low_is_stopword };

// Throws DataError on an unknown name.
Measure parse_measure(std::string_view name);
std::string_view measure_name(Measure measure);

// tf, tcf_unique, tcf_total, rake -> high; idf, tf_idf, log_tf_idf -> low.
Polarity polarity_of(Measure measure);

double measure_score(const ScoreRow& row, Measure measure);

// Polarity-oriented score: higher always means more stop-word-like.
double stopword_likeness(const ScoreRow& row, Measure measure);

struct StopList {
  std::vector<std::string> words;  // unique, most stop-word-like first
  // provenance
  std::string measure;
  std::string cutoff_mode;  // "top-fraction" | "absolute"
  double cutoff = 0.0;
  std::string source;  // identifier of the corpus / score table
};

// Absolute threshold: keeps words with score >= cutoff (high-is-stopword
// measures) or score <= cutoff (low-is-stopword measures).
StopList generate_threshold(const ScoreTable& table, Measure measure,
                            double cutoff, std::string_view source = {});

// Top ceil(fraction * vocabulary size) words by stop-word-likeness, ties
// broken by lexicographic word order. fraction must lie in (0, 1].
StopList generate_top_fraction(const ScoreTable& table, Measure measure,
                               double fraction, std::string_view source = {});

enum class SweepMode { top_fraction, absolute };

struct SweepConfig {
  std::vector<Measure> measures;
  int steps = 10;                      // >= 2
  SweepMode mode = SweepMode::top_fraction;
  double max_fraction = 0.5;  // most liberal fraction in top-fraction mode
};

struct SweepStep {
  double cutoff = 0.0;
  StopList list;
};

struct SweepFamily {
  Measure measure;
  SweepMode mode;
  std::vector<SweepStep> steps;  // strictest first; lists nest
};

// One family per measure, one list per step, strictest to most liberal.
// Top-fraction cutoffs are i * max_fraction / steps; absolute cutoffs are
// equally spaced between the extreme observed scores of the measure.
std::vector<SweepFamily> sweep(const ScoreTable& table,
                               const SweepConfig& config,
                               std::string_view source = {});

// One word per line; provenance written as leading '#' comment lines.
void write_stoplist(std::ostream& out, const StopList& list);

// Plain word-per-line reader: trims, skips blanks and '#' comments, drops
// duplicates, keeps first-seen order.
std::vector<std::string> read_word_list(std::istream& in);

}  // namespace stopforge
