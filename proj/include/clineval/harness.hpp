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

// Batch evaluation: per-record analysis, per-utterance metric rows, grouped
// aggregates, method comparisons and clinician correlations.
//
// Every record yields one row. Rows of the original method carry their own
// lexical and clinical metrics; rows of any other method additionally carry
// pair metrics (similarity, pitch difference, automatic PCC) against the
// original record of the same utterance.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clineval/config.hpp"
#include "clineval/manifest.hpp"
#include "clineval/phon.hpp"
#include "clineval/stats.hpp"

namespace clineval {

/// A value, or the reason it is absent. Absent values are never zero-filled.
template <typename T>
struct Computed {
  std::optional<T> value;
  std::string reason;

  static Computed of(T v) { return {std::move(v), {}}; }
  static Computed missing(std::string why) { return {std::nullopt, std::move(why)}; }
  bool present() const { return value.has_value(); }
};

using Metric = Computed<double>;

enum class MetricId : std::size_t {
  kWer,
  kCer,
  kConfidence,
  kSimilarity,
  kF0MeanHz,
  kF0DiffPct,
  kSemitoneDiff,
  kAutoPcc,
  kAutoPccMatches,
  kAutoPccTotal,
  kConsonantDistance,
  kClinicianPcc,
  kClinicianCorrect,
  kClinicianTotal,
  kAssessedClinicianErrors,
  kAssessedClinicianPcc,
  kUnknownIpaSymbols,
  kCount,
};

inline constexpr std::size_t kMetricCount = static_cast<std::size_t>(MetricId::kCount);

/// Stable column name, e.g. "f0_diff_pct".
std::string_view metric_name(MetricId id);
/// Throws kInvalidArgument for unknown names.
MetricId parse_metric(std::string_view name);

struct MetricRow {
  std::string utterance_id;
  std::string speaker_id;
  std::optional<std::string> group;
  std::string method;
  std::array<Metric, kMetricCount> metrics;

  Metric &operator[](MetricId id) { return metrics[static_cast<std::size_t>(id)]; }
  const Metric &operator[](MetricId id) const {
    return metrics[static_cast<std::size_t>(id)];
  }
};

/// Everything derived from a single record, before pairing.
struct RecordAnalysis {
  Metric f0_mean_hz;
  Computed<EmbeddingVector> embedding;
  Computed<ErrorRate> wer;
  Computed<ErrorRate> cer;
  Metric confidence;
  Computed<IpaSequence> ipa_predicted;
  Computed<IpaSequence> ipa_target;
  std::optional<std::size_t> unknown_ipa_symbols;
};

/// True when the record carries any input a metric can be computed from.
bool has_metric_inputs(const UtteranceRecord &rec);

RecordAnalysis analyze_record(const UtteranceRecord &rec, const ToolkitConfig &cfg,
                              const ConsonantInventory &inventory);

/// Row for a record of the original method.
MetricRow build_original_row(const UtteranceRecord &rec, const RecordAnalysis &analysis,
                             const ToolkitConfig &cfg);

/// Row for `reconstructed` paired with its `original`; `original` may be null
/// when the manifest has no original record for the utterance.
MetricRow build_pair_row(const UtteranceRecord *original,
                         const RecordAnalysis *original_analysis,
                         const UtteranceRecord &reconstructed,
                         const RecordAnalysis &reconstructed_analysis,
                         const ToolkitConfig &cfg);

/// Analyzes both records and builds the reconstructed-side row. Throws
/// kInvalidArgument when the records do not share an utterance_id or share a
/// method, and kNoMetricInputs when neither record has any metric input.
MetricRow evaluate_pair(const UtteranceRecord &original,
                        const UtteranceRecord &reconstructed, const ToolkitConfig &cfg);

struct MetricSummary {
  std::size_t n_present = 0;
  std::size_t n_missing = 0;
  std::optional<double> mean;
};

struct GroupAggregate {
  std::string group_key;  // speaker, group or method value
  std::string method;
  std::size_t n_rows = 0;
  std::array<MetricSummary, kMetricCount> metrics;
  /// sum(matches) / sum(totals), over rows where automatic PCC is present.
  std::optional<double> pooled_auto_pcc;
  std::optional<double> pooled_clinician_pcc;
  /// Mean similarity compared against the configured threshold.
  std::optional<bool> similarity_meets_threshold;

  const MetricSummary &operator[](MetricId id) const {
    return metrics[static_cast<std::size_t>(id)];
  }
};

/// Orders methods with `original_method` first, the rest lexicographically.
bool method_less(std::string_view a, std::string_view b, std::string_view original_method);

/// Per-(group key, method) aggregates in sorted order. With GroupBy::kMethod
/// the group key is the method itself. Throws kInsufficientData for no rows.
std::vector<GroupAggregate> aggregate(std::span<const MetricRow> rows, GroupBy group_by,
                                      const ToolkitConfig &cfg = {});

struct MethodComparison {
  MetricId metric{};
  std::string method_a;
  std::string method_b;
  std::size_t n_paired = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double delta = 0.0;  // mean_a - mean_b
  TTestResult test;
};

/// Welch test over the metric values of the utterances both methods have.
/// Throws kInsufficientOverlap below two shared utterances.
MethodComparison compare_methods(std::span<const MetricRow> rows, MetricId metric,
                                 std::string_view method_a, std::string_view method_b);

/// A comparison or correlation the report tried to compute.
struct ComparisonEntry {
  MetricId metric{};
  std::string method_a;
  std::string method_b;
  Computed<MethodComparison> result;
};

struct CorrelationEntry {
  std::string method;
  MetricId automatic{};
  MetricId clinician{};
  std::vector<std::string> utterance_ids;
  Computed<CorrelationResult> result;
};

/// Automatic-vs-clinician correlations per method: consonant distance against
/// clinician error count, and automatic PCC against clinician PCC.
std::vector<CorrelationEntry> correlate_with_clinician(std::span<const MetricRow> rows,
                                                       const ToolkitConfig &cfg);

struct EvaluationReport {
  ToolkitConfig config;
  std::vector<MetricRow> rows;
  std::vector<GroupAggregate> groups;
  std::vector<ComparisonEntry> comparisons;
  std::vector<CorrelationEntry> correlations;
};

/// Metrics that method comparisons are run on.
std::span<const MetricId> compared_metrics();

/// Full pipeline over a validated manifest. `jobs` only affects speed: rows
/// are assembled in (utterance_id, method) order whatever the thread count.
EvaluationReport evaluate_manifest(std::span<const UtteranceRecord> records,
                                   const ToolkitConfig &cfg, unsigned jobs = 1);

}  // namespace clineval
