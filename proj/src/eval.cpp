#include "stopforge/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "stopforge/error.hpp"

namespace stopforge {

ReferenceList load_reference(std::istream& in, std::string_view name,
                             const TokenizerConfig& config) {
  ReferenceList reference;
  reference.name = std::string(name);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    for (std::string& word : tokenize(line, config))
      reference.words.push_back(std::move(word));
  }
  if (in.bad()) throw IoError("read failure while loading reference list");
  std::sort(reference.words.begin(), reference.words.end());
  reference.words.erase(std::unique(reference.words.begin(), reference.words.end()),
                        reference.words.end());
  if (reference.words.empty())
    throw DataError("reference list '" + reference.name +
                    "' is empty after normalization");
  return reference;
}

ReferenceList restrict_to_vocabulary(const ReferenceList& reference,
                                     const std::vector<std::string>& sorted_vocabulary) {
  ReferenceList restricted;
  restricted.name = reference.name + "|vocab";
  std::set_intersection(reference.words.begin(), reference.words.end(),
                        sorted_vocabulary.begin(), sorted_vocabulary.end(),
                        std::back_inserter(restricted.words));
  return restricted;
}

EvalReport evaluate(const std::vector<std::string>& generated,
                    const ReferenceList& reference) {
  std::vector<std::string> gen(generated);
  std::sort(gen.begin(), gen.end());
  gen.erase(std::unique(gen.begin(), gen.end()), gen.end());

  EvalReport report;
  report.generated_size = gen.size();
  report.reference_size = reference.words.size();
  std::vector<std::string> common;
  std::set_intersection(gen.begin(), gen.end(), reference.words.begin(),
                        reference.words.end(), std::back_inserter(common));
  report.intersection_size = common.size();
  report.empty_generated = gen.empty();
  report.empty_reference = reference.words.empty();
  if (report.generated_size > 0)
    report.precision = static_cast<double>(report.intersection_size) /
                       static_cast<double>(report.generated_size);
  if (report.reference_size > 0)
    report.recall = static_cast<double>(report.intersection_size) /
                    static_cast<double>(report.reference_size);
  if (report.precision + report.recall > 0.0)
    report.f1 = 2.0 * report.precision * report.recall /
                (report.precision + report.recall);
  return report;
}

std::vector<SweepRow> sweep_report(const std::vector<SweepFamily>& families,
                                   const ReferenceList& reference) {
  std::vector<SweepRow> rows;
  for (const SweepFamily& family : families) {
    for (const SweepStep& step : family.steps) {
      EvalReport report = evaluate(step.list.words, reference);
      SweepRow row;
      row.measure = std::string(measure_name(family.measure));
      row.mode = family.mode == SweepMode::top_fraction ? "top-fraction" : "absolute";
      row.cutoff = step.cutoff;
      row.list_size = step.list.words.size();
      row.precision = report.precision;
      row.recall = report.recall;
      row.f1 = report.f1;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string fixed6(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "measure,mode,cutoff,list_size,precision,recall,f1\n";
  for (const SweepRow& row : rows) {
    out << row.measure << ',' << row.mode << ',' << fixed6(row.cutoff) << ','
        << row.list_size << ',' << fixed6(row.precision) << ','
        << fixed6(row.recall) << ',' << fixed6(row.f1) << '\n';
  }
}

BestCutoff best_cutoff(const std::vector<SweepRow>& rows, BestCriterion criterion) {
  if (rows.empty()) throw DataError("best_cutoff requires at least one row");
  auto value = [&](const SweepRow& row) {
    return criterion == BestCriterion::precision ? row.precision : row.f1;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (value(rows[i]) > value(rows[best]) ||
        (value(rows[i]) == value(rows[best]) &&
         rows[i].list_size < rows[best].list_size)) {
      best = i;  // earlier (stricter) rows win remaining ties
    }
  }
  return BestCutoff{rows[best].measure, rows[best].cutoff, best};
}

std::string eval_report_json(const EvalReport& report,
                             std::string_view reference_name,
                             bool vocab_restricted) {
  nlohmann::ordered_json j;
  j["reference"] = std::string(reference_name);
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  j["generated_size"] = report.generated_size;
  j["reference_size"] = report.reference_size;
  j["intersection_size"] = report.intersection_size;
  j["flags"] = {{"vocab_restrict", vocab_restricted},
                {"empty_generated", report.empty_generated},
                {"empty_reference", report.empty_reference}};
  return j.dump(2) + "\n";
}

}  // namespace stopforge
