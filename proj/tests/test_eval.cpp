#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "stopforge/error.hpp"
#include "stopforge/eval.hpp"

using namespace stopforge;

namespace {

ReferenceList make_reference(std::vector<std::string> words, std::string name = "ref") {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return ReferenceList{std::move(name), std::move(words)};
}

}  // namespace

TEST_CASE("load_reference normalizes, deduplicates and skips comments") {
  std::istringstream in("The\na\n# comment\n");
  ReferenceList ref = load_reference(in, "fox");
  CHECK(ref.name == "fox");
  CHECK(ref.words == std::vector<std::string>{"a", "the"});

  std::istringstream dup("a\na\nA\n");
  CHECK(load_reference(dup, "d").words == std::vector<std::string>{"a"});

  std::istringstream only_comments("# one\n# two\n");
  CHECK_THROWS_AS(load_reference(only_comments, "x"), DataError);
}

TEST_CASE("restrict_to_vocabulary") {
  ReferenceList ref = make_reference({"the", "whilst"});
  std::vector<std::string> vocab = {"quake", "the"};
  std::sort(vocab.begin(), vocab.end());
  ReferenceList restricted = restrict_to_vocabulary(ref, vocab);
  CHECK(restricted.name == "ref|vocab");
  CHECK(restricted.words == std::vector<std::string>{"the"});

  ReferenceList inside = make_reference({"the"});
  CHECK(restrict_to_vocabulary(inside, vocab).words == inside.words);

  ReferenceList disjoint = make_reference({"zzz"});
  CHECK(restrict_to_vocabulary(disjoint, vocab).words.empty());
}

TEST_CASE("evaluate worked examples") {
  CHECK(evaluate({"the", "a"}, make_reference({"the", "a"})).f1 == 1.0);

  EvalReport half = evaluate({"the", "quake"}, make_reference({"the", "a"}));
  CHECK(half.precision == 0.5);
  CHECK(half.recall == 0.5);
  CHECK(half.f1 == 0.5);

  EvalReport quarter = evaluate({"the"}, make_reference({"the", "a", "an", "at"}));
  CHECK(quarter.precision == 1.0);
  CHECK(quarter.recall == 0.25);
  CHECK(quarter.f1 == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("empty generated list scores zero with a flag") {
  EvalReport report = evaluate({}, make_reference({"the"}));
  CHECK(report.precision == 0.0);
  CHECK(report.recall == 0.0);
  CHECK(report.f1 == 0.0);
  CHECK(report.empty_generated);
}

TEST_CASE("empty restricted reference is handled, not fatal") {
  ReferenceList empty;
  empty.name = "r|vocab";
  EvalReport report = evaluate({"a"}, empty);
  CHECK(report.recall == 0.0);
  CHECK(report.empty_reference);
}

TEST_CASE("evaluate matches a set-arithmetic oracle on random pairs") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 1000; ++trial) {
    auto gen = testutil::random_word_set(rng, 50, 30);
    auto ref_words = testutil::random_word_set(rng, 50, 30);
    if (ref_words.empty()) continue;
    ReferenceList ref = make_reference(ref_words);
    EvalReport report = evaluate(gen, ref);

    std::set<std::string> gs(gen.begin(), gen.end());
    std::set<std::string> rs(ref.words.begin(), ref.words.end());
    std::size_t inter = 0;
    for (const auto& w : gs) inter += rs.count(w);
    double precision = gs.empty() ? 0.0 : double(inter) / double(gs.size());
    double recall = double(inter) / double(rs.size());
    CHECK(report.intersection_size == inter);
    CHECK(report.precision == precision);
    CHECK(report.recall == recall);
    CHECK(std::abs(report.f1 * (report.precision + report.recall) -
                   2.0 * report.precision * report.recall) <= 1e-12);
    CHECK((report.f1 == 0.0) == (inter == 0));
    CHECK((report.f1 == 1.0) == (gs == rs));

    // Treating both sides as plain sets, precision and recall swap roles.
    ReferenceList gen_as_ref = make_reference(gen);
    if (!gen_as_ref.words.empty()) {
      EvalReport swapped = evaluate(ref.words, gen_as_ref);
      CHECK(report.precision == swapped.recall);
    }
  }
}

TEST_CASE("sweep_report on the worked three-step sweep") {
  ScoreTable table;
  table.doc_count = 2;
  auto add = [&](std::string w, std::uint64_t types) {
    ScoreRow row;
    row.word = std::move(w);
    row.stats.tf = 1;
    row.stats.df = 1;
    row.stats.successor_types = types;
    table.rows.push_back(std::move(row));
  };
  add("city", 0);
  add("quake", 2);
  add("the", 3);

  SweepConfig config;
  config.measures = {Measure::tcf_unique};
  config.steps = 3;
  config.max_fraction = 1.0;
  auto families = sweep(table, config, "mem");
  auto rows = sweep_report(families, make_reference({"the"}));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].recall == 1.0);
  CHECK(rows[1].recall == 1.0);
  CHECK(rows[2].recall == 1.0);
  CHECK(rows[0].precision == 1.0);
  CHECK(rows[1].precision == 0.5);
  CHECK(rows[2].precision == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(rows[0].measure == "tcf_unique");
  CHECK(rows[0].mode == "top-fraction");
  CHECK(rows[0].list_size == 1);
}

TEST_CASE("recall is non-decreasing over nested sweep steps") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 15; ++trial) {
    Corpus corpus = testutil::random_corpus(rng, 18, 9, 12);
    if (corpus.doc_count() == 0 || corpus.vocabulary.empty()) continue;
    auto ref_words = testutil::random_word_set(rng, 12, 8);
    std::vector<std::string> ref;
    for (auto& w : ref_words) ref.push_back("w" + w.substr(1));  // map to corpus alphabet
    if (ref.empty()) ref.push_back("w0");
    ScoreTable table = build_score_table(corpus);
    SweepConfig config;
    config.measures = {Measure::tf, Measure::tcf_unique, Measure::idf};
    auto rows = sweep_report(sweep(table, config), make_reference(ref));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].measure != rows[i - 1].measure) continue;
      CHECK(rows[i].recall >= rows[i - 1].recall);
    }
  }
}

TEST_CASE("single-step report row matches evaluate") {
  ScoreTable table;
  ScoreRow row;
  row.word = "a";
  row.stats.tf = 3;
  row.stats.df = 1;
  table.doc_count = 1;
  table.rows.push_back(row);
  SweepConfig config;
  config.measures = {Measure::tf};
  config.steps = 2;
  auto rows = sweep_report(sweep(table, config), make_reference({"a"}));
  EvalReport direct = evaluate({"a"}, make_reference({"a"}));
  CHECK(rows[0].precision == direct.precision);
  CHECK(rows[0].recall == direct.recall);
  CHECK(rows[0].f1 == direct.f1);
}

TEST_CASE("best_cutoff picks the argmax with size and strictness tie-breaks") {
  std::vector<SweepRow> rows(3);
  rows[0] = {"tf", "top-fraction", 0.1, 10, 0.4, 0.2, 0.26};
  rows[1] = {"tf", "top-fraction", 0.2, 20, 0.9, 0.4, 0.55};
  rows[2] = {"tf", "top-fraction", 0.3, 30, 0.7, 0.6, 0.64};
  BestCutoff best = best_cutoff(rows, BestCriterion::precision);
  CHECK(best.cutoff == 0.2);
  CHECK(best.row == 1);

  rows[2].precision = 0.9;
  rows[2].list_size = 10;
  // tie on precision: the smaller list wins
  CHECK(best_cutoff(rows, BestCriterion::precision).row == 2);

  rows[2].list_size = 20;
  // full tie: the stricter (earlier) row wins
  CHECK(best_cutoff(rows, BestCriterion::precision).row == 1);

  CHECK(best_cutoff(rows, BestCriterion::f1).row == 2);

  CHECK_THROWS_AS(best_cutoff({}, BestCriterion::f1), DataError);

  std::vector<SweepRow> one(1);
  one[0] = {"idf", "absolute", 1.0, 5, 0.3, 0.3, 0.3};
  CHECK(best_cutoff(one, BestCriterion::precision).measure == "idf");
}

TEST_CASE("sweep csv format") {
  std::vector<SweepRow> rows(1);
  rows[0] = {"tcf_unique", "top-fraction", 0.05, 12, 1.0, 0.25, 0.4};
  std::ostringstream out;
  write_sweep_csv(out, rows);
  CHECK(out.str() ==
        "measure,mode,cutoff,list_size,precision,recall,f1\n"
        "tcf_unique,top-fraction,0.050000,12,1.000000,0.250000,0.400000\n");
}

TEST_CASE("eval report json carries fields and flags") {
  EvalReport report;
  report.precision = 0.5;
  report.recall = 1.0;
  report.f1 = 2.0 / 3.0;
  report.generated_size = 2;
  report.reference_size = 1;
  report.intersection_size = 1;
  std::string json = eval_report_json(report, "fox", true);
  CHECK(json.find("\"reference\": \"fox\"") != std::string::npos);
  CHECK(json.find("\"precision\": 0.5") != std::string::npos);
  CHECK(json.find("\"vocab_restrict\": true") != std::string::npos);
  CHECK(json.find("\"empty_generated\": false") != std::string::npos);
}
