// Copyright 2026 The clineval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "clineval/error.hpp"
#include "clineval/harness.hpp"
#include "clineval/manifest.hpp"
#include "clineval/report.hpp"
#include "test_util.hpp"

namespace clineval {
namespace {

using nlohmann::json;
using test::expect_errc;
using test::ScratchDir;

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path &p, const std::string &text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::vector<std::string> diagnostics_of(const json &doc, bool check_files = false,
                                        const std::filesystem::path &base = ".") {
  try {
    parse_manifest_json(doc, base, check_files);
  } catch (const ManifestError &e) {
    return e.diagnostics();
  }
  return {};
}

// --- manifest -------------------------------------------------------------------

TEST(Manifest, EmptyRecordListIsEmpty) {
  EXPECT_TRUE(parse_manifest_json(json{{"records", json::array()}}, ".").empty());
}

TEST(Manifest, ClinicianCorrectAboveTotalIsRejected) {
  const json doc = {{"records",
                     {{{"utterance_id", "a"},
                       {"speaker_id", "s"},
                       {"method", "original"},
                       {"clinician_correct", 5},
                       {"clinician_total", 3}}}}};
  try {
    parse_manifest_json(doc, ".");
    FAIL();
  } catch (const ManifestError &e) {
    EXPECT_EQ(e.code(), Errc::kSchema);
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_NE(e.diagnostics()[0].find("records[0]"), std::string::npos) << e.diagnostics()[0];
  }
}

TEST(Manifest, AllProblemsReportedTogether) {
  const json doc = {{"records",
                     {{{"utterance_id", "a"}, {"speaker_id", "s"}},
                      {{"utterance_id", 3}, {"speaker_id", "s"}, {"method", "m"}},
                      {{"utterance_id", "b"}, {"speaker_id", "s"}, {"method", "m"},
                       {"colour", "red"}},
                      {{"utterance_id", "c"}, {"speaker_id", "s"}, {"method", "m"},
                       {"clinician_correct", 2}},
                      {{"utterance_id", "d"}, {"speaker_id", "s"}, {"method", "m"},
                       {"asr_word_confidences", {0.5, 1.5}}},
                      {{"utterance_id", "b"}, {"speaker_id", "s"}, {"method", "m"}}}}};
  const auto diags = diagnostics_of(doc);
  ASSERT_GE(diags.size(), 6u);
  auto mentions = [&](const std::string &needle) {
    for (const auto &d : diags)
      if (d.find(needle) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(mentions("records[0].method"));
  EXPECT_TRUE(mentions("records[1].utterance_id"));
  EXPECT_TRUE(mentions("colour"));
  EXPECT_TRUE(mentions("records[3]"));
  EXPECT_TRUE(mentions("records[4].asr_word_confidences[1]"));
  EXPECT_TRUE(mentions("records[5]"));
}

TEST(Manifest, MalformedTotalAloneIsOneDiagnostic) {
  const json doc = {{"records",
                     {{{"utterance_id", "a"}, {"speaker_id", "s"}, {"method", "m"},
                       {"clinician_correct", 3}, {"clinician_total", "four"}}}}};
  const auto diags = diagnostics_of(doc);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_NE(diags[0].find("records[0].clinician_total"), std::string::npos) << diags[0];
}

TEST(Manifest, DanglingReferencesAreDistinct) {
  ScratchDir dir;
  const json doc = {{"records",
                     {{{"utterance_id", "a"}, {"speaker_id", "s"}, {"method", "m"},
                       {"audio_path", "missing.wav"}}}}};
  try {
    parse_manifest_json(doc, dir.path(), true);
    FAIL();
  } catch (const ManifestError &e) {
    EXPECT_EQ(e.code(), Errc::kDanglingReference);
  }
  EXPECT_NO_THROW(parse_manifest_json(doc, dir.path(), false));
}

TEST(Manifest, FixtureRecordsResolve) {
  const auto records = load_manifest(CLINEVAL_FIXTURE_DIR "/eval/manifest.json");
  ASSERT_EQ(records.size(), 12u);
  const auto &r = records.front();
  EXPECT_EQ(r.utterance_id, "u01");
  EXPECT_EQ(r.method, "original");
  EXPECT_EQ(r.group, "mild");
  ASSERT_TRUE(r.audio_path);
  EXPECT_TRUE(r.audio_path->is_absolute());
  EXPECT_TRUE(std::filesystem::exists(*r.audio_path));
  EXPECT_EQ(r.embedding_format, EmbeddingFormat::kJson);
  EXPECT_EQ(r.clinician_correct, 3);
  EXPECT_EQ(r.clinician_total, 5);
  EXPECT_EQ(records[1].embedding_format, EmbeddingFormat::kFloat32);  // styled uses .f32
}

TEST(Manifest, CsvMatchesJson) {
  ScratchDir dir;
  write_text(dir / "m.csv",
             "utterance_id,speaker_id,group,method,asr_hypothesis,asr_word_confidences,"
             "clinician_correct,clinician_total\n"
             "u1,s1,mild,original,\"hello, world\",0.5 0.25,3,4\n"
             "u1,s1,mild,styled,,,,\n");
  const auto records = load_manifest(dir / "m.csv");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].asr_hypothesis, "hello, world");
  EXPECT_EQ(records[0].asr_word_confidences, (std::vector<double>{0.5, 0.25}));
  EXPECT_EQ(records[0].clinician_total, 4);
  EXPECT_FALSE(records[1].asr_hypothesis);
  EXPECT_FALSE(records[1].clinician_total);
}

TEST(Manifest, CsvErrorsCiteLines) {
  ScratchDir dir;
  write_text(dir / "bad.csv",
             "utterance_id,speaker_id,method,clinician_correct,clinician_total\n"
             "u1,s1,original,x,4\n"
             "u2,s1\n");
  try {
    load_manifest(dir / "bad.csv");
    FAIL();
  } catch (const ManifestError &e) {
    ASSERT_EQ(e.diagnostics().size(), 2u);
    EXPECT_NE(e.diagnostics()[0].find("line 2"), std::string::npos) << e.diagnostics()[0];
    EXPECT_NE(e.diagnostics()[1].find("line 3"), std::string::npos) << e.diagnostics()[1];
  }
}

TEST(Manifest, MissingFileAndBadJson) {
  ScratchDir dir;
  expect_errc(Errc::kMissingFile, [&] { load_manifest(dir / "none.json"); });
  write_text(dir / "bad.json", "{not json");
  expect_errc(Errc::kSchema, [&] { load_manifest(dir / "bad.json"); });
}

// --- per-pair evaluation ---------------------------------------------------------

UtteranceRecord bare(const std::string &method) {
  UtteranceRecord r;
  r.utterance_id = "u";
  r.speaker_id = "s";
  r.method = method;
  return r;
}

TEST(EvaluatePair, OnlyEmbeddingsGivesOnlySimilarity) {
  ScratchDir dir;
  write_text(dir / "a.json", "[1, 2, 3]");
  write_text(dir / "b.json", "[1, 2, 4]");
  auto orig = bare("original");
  auto rec = bare("styled");
  orig.embedding_ref = dir / "a.json";
  rec.embedding_ref = dir / "b.json";
  const auto row = evaluate_pair(orig, rec, {});
  ASSERT_TRUE(row[MetricId::kSimilarity].present());
  EXPECT_NEAR(*row[MetricId::kSimilarity].value, 17.0 / std::sqrt(14.0 * 21.0), 1e-12);
  for (std::size_t i = 0; i < kMetricCount; ++i) {
    const auto id = static_cast<MetricId>(i);
    if (id == MetricId::kSimilarity) continue;
    EXPECT_FALSE(row[id].present()) << metric_name(id);
    EXPECT_FALSE(row[id].reason.empty()) << metric_name(id);
  }
}

TEST(EvaluatePair, IdenticalInputsGiveZeroDifference) {
  ScratchDir dir;
  write_wav(dir / "a.wav", test::sine(200, 16000, 0.5).samples, 16000);
  write_text(dir / "e.json", "[0.1, 0.2, 0.3]");
  auto orig = bare("original");
  orig.audio_path = dir / "a.wav";
  orig.embedding_ref = dir / "e.json";
  auto rec = orig;
  rec.method = "copy";
  const auto row = evaluate_pair(orig, rec, {});
  EXPECT_EQ(*row[MetricId::kSemitoneDiff].value, 0.0);
  EXPECT_EQ(*row[MetricId::kF0DiffPct].value, 0.0);
  EXPECT_NEAR(*row[MetricId::kSimilarity].value, 1.0, 1e-15);
  EXPECT_NEAR(*row[MetricId::kF0MeanHz].value, 200.0, 2.0);
}

TEST(EvaluatePair, TextAndIpa) {
  auto orig = bare("original");
  auto rec = bare("styled");
  orig.ipa_predicted = "tæt";
  rec.ipa_predicted = "kæt";
  rec.target_text = "The cat";
  rec.asr_hypothesis = "the hat";
  rec.asr_word_confidences = std::vector<double>{0.5, 0.7};
  const auto row = evaluate_pair(orig, rec, {});
  EXPECT_DOUBLE_EQ(*row[MetricId::kWer].value, 0.5);
  EXPECT_DOUBLE_EQ(*row[MetricId::kCer].value, 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(*row[MetricId::kConfidence].value, 0.6);
  EXPECT_EQ(*row[MetricId::kAutoPcc].value, 50.0);
  EXPECT_EQ(*row[MetricId::kConsonantDistance].value, 1.0);
  EXPECT_FALSE(row[MetricId::kSimilarity].present());
  EXPECT_FALSE(row[MetricId::kSemitoneDiff].present());
}

TEST(EvaluatePair, UndefinedPccIsExcludedWithReason) {
  auto orig = bare("original");
  auto rec = bare("styled");
  orig.ipa_predicted = "ma";
  rec.ipa_predicted = "aɪ";
  const auto row = evaluate_pair(orig, rec, {});
  EXPECT_FALSE(row[MetricId::kAutoPcc].present());
  EXPECT_NE(row[MetricId::kAutoPcc].reason.find("excluded"), std::string::npos)
      << row[MetricId::kAutoPcc].reason;
}

TEST(EvaluatePair, Preconditions) {
  auto a = bare("original");
  auto b = bare("styled");
  b.utterance_id = "other";
  b.target_text = "x";
  a.target_text = "x";
  expect_errc(Errc::kInvalidArgument, [&] { evaluate_pair(a, b, {}); });
  expect_errc(Errc::kNoMetricInputs, [&] { evaluate_pair(bare("original"), bare("x"), {}); });
}

// --- aggregation and comparison ----------------------------------------------

MetricRow row_with(const std::string &uid, const std::string &method, MetricId id, double v,
                   std::optional<std::string> group = "g") {
  MetricRow row;
  row.utterance_id = uid;
  row.speaker_id = "s-" + uid;
  row.group = std::move(group);
  row.method = method;
  for (auto &m : row.metrics) m = Metric::missing("not computed: test");
  row[id] = Metric::of(v);
  return row;
}

TEST(Aggregate, SingleRowEqualsRow) {
  const std::vector<MetricRow> rows = {row_with("u1", "styled", MetricId::kWer, 0.25)};
  const auto groups = aggregate(rows, GroupBy::kGroup);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].group_key, "g");
  EXPECT_EQ(groups[0].n_rows, 1u);
  EXPECT_EQ(*groups[0][MetricId::kWer].mean, 0.25);
  EXPECT_EQ(groups[0][MetricId::kCer].n_missing, 1u);
  EXPECT_FALSE(groups[0][MetricId::kCer].mean);
}

TEST(Aggregate, MeanOfTwo) {
  const std::vector<MetricRow> rows = {row_with("u1", "m", MetricId::kWer, 0.2),
                                       row_with("u2", "m", MetricId::kWer, 0.4)};
  const auto groups = aggregate(rows, GroupBy::kGroup);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_NEAR(*groups[0][MetricId::kWer].mean, 0.3, 1e-15);
  EXPECT_EQ(groups[0][MetricId::kWer].n_present, 2u);
}

TEST(Aggregate, KeysAndOrdering) {
  const std::vector<MetricRow> rows = {
      row_with("u1", "zeta", MetricId::kWer, 0.1, "severe"),
      row_with("u2", "original", MetricId::kWer, 0.2, "mild"),
      row_with("u3", "alpha", MetricId::kWer, 0.3, "mild"),
      row_with("u4", "alpha", MetricId::kWer, 0.3, std::nullopt)};
  const auto groups = aggregate(rows, GroupBy::kGroup);
  ASSERT_EQ(groups.size(), 4u);
  EXPECT_EQ(groups[0].group_key, "(none)");
  EXPECT_EQ(groups[1].group_key, "mild");
  EXPECT_EQ(groups[1].method, "original");
  EXPECT_EQ(groups[2].method, "alpha");
  EXPECT_EQ(groups[3].group_key, "severe");
  EXPECT_EQ(aggregate(rows, GroupBy::kSpeaker).size(), 4u);
  EXPECT_EQ(aggregate(rows, GroupBy::kMethod).size(), 3u);
}

TEST(Aggregate, PooledPccAndThreshold) {
  auto a = row_with("u1", "m", MetricId::kAutoPcc, 50.0);
  a[MetricId::kAutoPccMatches] = Metric::of(1);
  a[MetricId::kAutoPccTotal] = Metric::of(2);
  a[MetricId::kSimilarity] = Metric::of(0.7);
  auto b = row_with("u2", "m", MetricId::kAutoPcc, 90.0);
  b[MetricId::kAutoPccMatches] = Metric::of(9);
  b[MetricId::kAutoPccTotal] = Metric::of(10);
  b[MetricId::kSimilarity] = Metric::of(0.4);
  const std::vector<MetricRow> rows = {a, b};
  const auto groups = aggregate(rows, GroupBy::kGroup);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_NEAR(*groups[0].pooled_auto_pcc, 100.0 * 10.0 / 12.0, 1e-12);
  EXPECT_NEAR(*groups[0][MetricId::kAutoPcc].mean, 70.0, 1e-12);
  EXPECT_EQ(groups[0].similarity_meets_threshold, false);  // mean 0.55 < 0.6
}

std::vector<MetricRow> paired_rows(const std::vector<double> &a, const std::vector<double> &b) {
  std::vector<MetricRow> rows;
  for (std::size_t i = 0; i < a.size(); ++i)
    rows.push_back(row_with("u" + std::to_string(i), "a", MetricId::kWer, a[i]));
  for (std::size_t i = 0; i < b.size(); ++i)
    rows.push_back(row_with("u" + std::to_string(i), "b", MetricId::kWer, b[i]));
  return rows;
}

TEST(CompareMethods, IdenticalRowsAreNotSignificant) {
  const auto rows = paired_rows({0.1, 0.3, 0.2, 0.5}, {0.1, 0.3, 0.2, 0.5});
  const auto c = compare_methods(rows, MetricId::kWer, "a", "b");
  EXPECT_EQ(c.n_paired, 4u);
  EXPECT_EQ(c.test.t_stat, 0.0);
  EXPECT_NEAR(c.test.p_value, 1.0, 1e-15);
  EXPECT_FALSE(c.test.significant_at_05);
}

TEST(CompareMethods, SeparatedDistributionsAreSignificant) {
  std::vector<double> a, b;
  for (int i = 0; i < 10; ++i) {
    a.push_back(0.1 + 0.001 * i);
    b.push_back(0.9 - 0.001 * i);
  }
  const auto c = compare_methods(paired_rows(a, b), MetricId::kWer, "a", "b");
  EXPECT_TRUE(c.test.significant_at_05);
  EXPECT_LT(c.test.p_value, 1e-10);
  EXPECT_NEAR(c.delta, 0.1045 - 0.8955, 1e-12);
}

TEST(CompareMethods, DisjointUtterancesAreAnError) {
  std::vector<MetricRow> rows = {row_with("u1", "a", MetricId::kWer, 0.1),
                                 row_with("u2", "a", MetricId::kWer, 0.2),
                                 row_with("u3", "b", MetricId::kWer, 0.1),
                                 row_with("u4", "b", MetricId::kWer, 0.3)};
  expect_errc(Errc::kInsufficientOverlap,
              [&] { compare_methods(rows, MetricId::kWer, "a", "b"); });
}

// --- report ------------------------------------------------------------------

TEST(Report, EmptyReportIsValid) {
  EvaluationReport report;
  const auto doc = report_to_json(report);
  EXPECT_TRUE(doc["per_utterance"].empty());
  EXPECT_TRUE(doc["method_comparisons"].empty());
  EXPECT_TRUE(doc["correlations"].empty());
  EXPECT_TRUE(doc.contains("config_echo"));
  ScratchDir dir;
  EXPECT_EQ(emit_report(report, ReportFormat::kJson, dir.path()).size(), 1u);
  EXPECT_EQ(emit_report(report, ReportFormat::kCsv, dir.path()).size(), 6u);
}

TEST(Report, EmittingTwiceGivesIdenticalBytes) {
  const auto records = load_manifest(CLINEVAL_FIXTURE_DIR "/eval/manifest.json");
  const auto report = evaluate_manifest(records, {}, 2);
  ScratchDir a, b;
  for (auto fmt : {ReportFormat::kJson, ReportFormat::kCsv}) {
    const auto pa = emit_report(report, fmt, a.path());
    const auto pb = emit_report(report, fmt, b.path());
    ASSERT_EQ(pa.size(), pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(slurp(pa[i]), slurp(pb[i]));
  }
}

TEST(Report, RoundingToSixSignificantDigits) {
  EXPECT_EQ(round_sig6(0.123456789), 0.123457);
  EXPECT_EQ(round_sig6(123456.789), 123457.0);
  EXPECT_EQ(format_sig6(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_sig6(100.0), "100");
}

TEST(Report, ConfigEchoRoundTrips) {
  ToolkitConfig cfg;
  cfg.group_by = GroupBy::kSpeaker;
  cfg.ipa_match = MatchMode::kBaseOnly;
  cfg.yin.threshold = 0.2;
  const auto back = config_from_json(json(config_to_json(cfg)));
  EXPECT_EQ(back.group_by, GroupBy::kSpeaker);
  EXPECT_EQ(back.ipa_match, MatchMode::kBaseOnly);
  EXPECT_EQ(back.yin.threshold, 0.2);
  EXPECT_EQ(config_to_json(back), config_to_json(cfg));
  expect_errc(Errc::kSchema, [] { config_from_json(json{{"bogus", 1}}); });
}

}  // namespace
}  // namespace clineval
