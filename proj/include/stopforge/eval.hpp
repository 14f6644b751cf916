#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stopforge/corpus.hpp"
#include "stopforge/stoplist.hpp"

namespace stopforge {

struct ReferenceList {
  std::string name;
  std::vector<std::string> words;  // sorted, unique, normalized
};

// One word per line, '#' comments allowed; words are normalized through the
// tokenizer and deduplicated. Throws DataError if nothing survives.
ReferenceList load_reference(std::istream& in, std::string_view name,
                             const TokenizerConfig& config = {});

// Intersection with a sorted vocabulary; name gains a "|vocab" suffix.
// May return an empty list.
ReferenceList restrict_to_vocabulary(const ReferenceList& reference,
                                     const std::vector<std::string>& sorted_vocabulary);

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t generated_size = 0;
  std::uint64_t reference_size = 0;
  std::uint64_t intersection_size = 0;
  bool empty_generated = false;
  bool empty_reference = false;
};

// precision = |G ∩ R| / |G|, recall = |G ∩ R| / |R|, f1 = 2PR/(P+R);
// an empty side scores zero and raises the matching flag.
EvalReport evaluate(const std::vector<std::string>& generated,
                    const ReferenceList& reference);

struct SweepRow {
  std::string measure;
  std::string mode;
  double cutoff = 0.0;
  std::uint64_t list_size = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// One row per (measure, step), ordered by measure then step.
std::vector<SweepRow> sweep_report(const std::vector<SweepFamily>& families,
                                   const ReferenceList& reference);

// Header: measure,mode,cutoff,list_size,precision,recall,f1
// Reals with 6 decimal places.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

enum class BestCriterion { precision, f1 };

struct BestCutoff {
  std::string measure;
  double cutoff = 0.0;
  std::size_t row = 0;  // index into the report rows
};

// Row maximizing the criterion; ties broken by smaller list size, then by
// the stricter (earlier) row. Throws DataError on empty input.
BestCutoff best_cutoff(const std::vector<SweepRow>& rows, BestCriterion criterion);

// JSON object with the report fields, the reference name and the flags.
std::string eval_report_json(const EvalReport& report,
                             std::string_view reference_name,
                             bool vocab_restricted);

}  // namespace stopforge
