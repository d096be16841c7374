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

#include "clineval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "clineval/audio.hpp"
#include "clineval/error.hpp"
#include "clineval/pitch.hpp"

namespace clineval {

namespace {

constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "wer",
    "cer",
    "confidence",
    "similarity",
    "f0_mean_hz",
    "f0_diff_pct",
    "semitone_diff",
    "auto_pcc",
    "auto_pcc_matches",
    "auto_pcc_total",
    "consonant_distance",
    "clinician_pcc",
    "clinician_correct",
    "clinician_total",
    "assessed_clinician_errors",
    "assessed_clinician_pcc",
    "unknown_ipa_symbols",
};

constexpr std::array<MetricId, 8> kComparedMetrics = {
    MetricId::kWer,        MetricId::kCer,          MetricId::kConfidence,
    MetricId::kSimilarity, MetricId::kF0DiffPct,    MetricId::kSemitoneDiff,
    MetricId::kAutoPcc,    MetricId::kClinicianPcc,
};

const std::string kSelf = "not computed: self-comparison";
const std::string kNoOriginal = "not computed: no original record";

std::string missing_input(std::string_view field) {
  return "not computed: missing " + std::string(field);
}

// Reasons must not embed file paths so reports stay machine independent.
std::string failure(std::string_view what, const Error &e) {
  return "not computed: " + std::string(what) + " (" + std::string(to_string(e.code())) + ")";
}

template <typename T>
std::string side_reason(const Computed<T> &c, std::string_view side) {
  return c.reason + " (" + std::string(side) + ")";
}

void fill_clinician(MetricRow &row, const UtteranceRecord &rec) {
  if (!rec.clinician_correct) {
    const auto why = missing_input("clinician counts");
    row[MetricId::kClinicianCorrect] = Metric::missing(why);
    row[MetricId::kClinicianTotal] = Metric::missing(why);
    row[MetricId::kClinicianPcc] = Metric::missing(why);
    return;
  }
  row[MetricId::kClinicianCorrect] = Metric::of(static_cast<double>(*rec.clinician_correct));
  row[MetricId::kClinicianTotal] = Metric::of(static_cast<double>(*rec.clinician_total));
  if (*rec.clinician_total == 0)
    row[MetricId::kClinicianPcc] = Metric::missing("excluded: clinician_total is 0");
  else
    row[MetricId::kClinicianPcc] =
        Metric::of(pcc_from_counts(*rec.clinician_correct, *rec.clinician_total));
}

void fill_assessed(MetricRow &row, const UtteranceRecord *assessed,
                   const std::string &absent_reason) {
  if (assessed == nullptr) {
    row[MetricId::kAssessedClinicianErrors] = Metric::missing(absent_reason);
    row[MetricId::kAssessedClinicianPcc] = Metric::missing(absent_reason);
    return;
  }
  if (!assessed->clinician_correct) {
    const auto why = missing_input("clinician counts");
    row[MetricId::kAssessedClinicianErrors] = Metric::missing(why);
    row[MetricId::kAssessedClinicianPcc] = Metric::missing(why);
    return;
  }
  row[MetricId::kAssessedClinicianErrors] = Metric::of(
      static_cast<double>(*assessed->clinician_total - *assessed->clinician_correct));
  if (*assessed->clinician_total == 0)
    row[MetricId::kAssessedClinicianPcc] = Metric::missing("excluded: clinician_total is 0");
  else
    row[MetricId::kAssessedClinicianPcc] =
        Metric::of(pcc_from_counts(*assessed->clinician_correct, *assessed->clinician_total));
}

void fill_own(MetricRow &row, const UtteranceRecord &rec, const RecordAnalysis &a) {
  row.utterance_id = rec.utterance_id;
  row.speaker_id = rec.speaker_id;
  row.group = rec.group;
  row.method = rec.method;
  row[MetricId::kWer] = a.wer.present() ? Metric::of(a.wer.value->value)
                                        : Metric::missing(a.wer.reason);
  row[MetricId::kCer] = a.cer.present() ? Metric::of(a.cer.value->value)
                                        : Metric::missing(a.cer.reason);
  row[MetricId::kConfidence] = a.confidence;
  row[MetricId::kF0MeanHz] = a.f0_mean_hz;
  row[MetricId::kUnknownIpaSymbols] =
      a.unknown_ipa_symbols
          ? Metric::of(static_cast<double>(*a.unknown_ipa_symbols))
          : Metric::missing(a.ipa_predicted.reason);
  fill_clinician(row, rec);
}

void set_pair_missing(MetricRow &row, const std::string &why) {
  for (auto id : {MetricId::kSimilarity, MetricId::kF0DiffPct, MetricId::kSemitoneDiff})
    row[id] = Metric::missing(why);
}

void set_pcc_missing(MetricRow &row, const std::string &why) {
  for (auto id : {MetricId::kAutoPcc, MetricId::kAutoPccMatches, MetricId::kAutoPccTotal,
                  MetricId::kConsonantDistance})
    row[id] = Metric::missing(why);
}

void fill_pcc(MetricRow &row, const Computed<IpaSequence> &ref,
              std::string_view ref_side, const Computed<IpaSequence> &produced,
              std::string_view produced_side, const ToolkitConfig &cfg) {
  if (!ref.present()) return set_pcc_missing(row, side_reason(ref, ref_side));
  if (!produced.present())
    return set_pcc_missing(row, side_reason(produced, produced_side));
  try {
    const auto pcc = consonant_accuracy(*ref.value, *produced.value, cfg.ipa_match,
                                        cfg.max_sequence_length);
    row[MetricId::kAutoPcc] = Metric::of(pcc.pcc_percent);
    row[MetricId::kAutoPccMatches] = Metric::of(static_cast<double>(pcc.matches));
    row[MetricId::kAutoPccTotal] = Metric::of(static_cast<double>(pcc.total_ref_consonants));
    row[MetricId::kConsonantDistance] =
        Metric::of(static_cast<double>(pcc.consonant_distance));
  } catch (const Error &e) {
    if (e.code() == Errc::kUndefinedPcc)
      set_pcc_missing(row, "excluded: reference has no consonants");
    else
      set_pcc_missing(row, failure("consonant alignment", e));
  }
}

const Computed<IpaSequence> &target_ipa(const RecordAnalysis &own,
                                        const RecordAnalysis *original) {
  if (own.ipa_target.present() || original == nullptr) return own.ipa_target;
  return original->ipa_target;
}

}  // namespace

std::string_view metric_name(MetricId id) {
  return kMetricNames.at(static_cast<std::size_t>(id));
}

MetricId parse_metric(std::string_view name) {
  for (std::size_t i = 0; i < kMetricCount; ++i)
    if (kMetricNames[i] == name) return static_cast<MetricId>(i);
  throw Error(Errc::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
}

std::span<const MetricId> compared_metrics() { return kComparedMetrics; }

bool has_metric_inputs(const UtteranceRecord &rec) {
  return rec.audio_path || rec.embedding_ref || rec.asr_hypothesis ||
         rec.asr_word_confidences || rec.ipa_predicted || rec.clinician_correct;
}

RecordAnalysis analyze_record(const UtteranceRecord &rec, const ToolkitConfig &cfg,
                              const ConsonantInventory &inventory) {
  RecordAnalysis a;

  if (!rec.audio_path) {
    a.f0_mean_hz = Metric::missing(missing_input("audio_path"));
  } else {
    try {
      const auto clip = load_wav(*rec.audio_path);
      const auto track = yin_f0_track(clip, cfg.yin);
      a.f0_mean_hz = Metric::of(aggregate_f0(track, cfg.f0_statistic));
    } catch (const Error &e) {
      a.f0_mean_hz = e.code() == Errc::kUnvoicedClip
                         ? Metric::missing("excluded: unvoiced clip")
                         : Metric::missing(failure("pitch analysis", e));
    }
  }

  if (!rec.embedding_ref) {
    a.embedding = Computed<EmbeddingVector>::missing(missing_input("embedding_ref"));
  } else {
    try {
      a.embedding = Computed<EmbeddingVector>::of(
          load_embedding(*rec.embedding_ref, rec.embedding_format));
    } catch (const Error &e) {
      a.embedding = Computed<EmbeddingVector>::missing(failure("embedding load", e));
    }
  }

  if (!rec.target_text || !rec.asr_hypothesis) {
    const auto why = missing_input(!rec.target_text ? "target_text" : "asr_hypothesis");
    a.wer = Computed<ErrorRate>::missing(why);
    a.cer = Computed<ErrorRate>::missing(why);
  } else {
    auto rate = [&](auto fn) {
      try {
        return Computed<ErrorRate>::of(
            fn(*rec.target_text, *rec.asr_hypothesis, cfg.text, cfg.max_sequence_length));
      } catch (const Error &e) {
        if (e.code() == Errc::kEmptyReference)
          return Computed<ErrorRate>::missing("excluded: empty reference transcript");
        return Computed<ErrorRate>::missing(failure("error rate", e));
      }
    };
    a.wer = rate([](auto &&...args) { return wer(args...); });
    a.cer = rate([](auto &&...args) { return cer(args...); });
  }

  if (!rec.asr_word_confidences) {
    a.confidence = Metric::missing(missing_input("asr_word_confidences"));
  } else if (rec.asr_word_confidences->empty()) {
    a.confidence = Metric::missing("excluded: empty asr_word_confidences");
  } else {
    a.confidence = Metric::of(mean(*rec.asr_word_confidences));
  }

  auto parse_ipa = [&](const std::optional<std::string> &text, std::string_view field) {
    if (!text) return Computed<IpaSequence>::missing(missing_input(field));
    try {
      return Computed<IpaSequence>::of(tokenize_ipa(normalize_ipa(*text), inventory));
    } catch (const Error &e) {
      return Computed<IpaSequence>::missing(failure(std::string("parsing ") + std::string(field), e));
    }
  };
  a.ipa_predicted = parse_ipa(rec.ipa_predicted, "ipa_predicted");
  a.ipa_target = parse_ipa(rec.ipa_target, "ipa_target");
  if (a.ipa_predicted.present()) a.unknown_ipa_symbols = a.ipa_predicted.value->unknown_count();
  return a;
}

MetricRow build_original_row(const UtteranceRecord &rec, const RecordAnalysis &analysis,
                             const ToolkitConfig &cfg) {
  MetricRow row;
  fill_own(row, rec, analysis);
  set_pair_missing(row, kSelf);
  if (cfg.pcc_reference == PccReference::kTarget) {
    fill_pcc(row, analysis.ipa_target, "target", analysis.ipa_predicted, "predicted", cfg);
    fill_assessed(row, &rec, kSelf);
  } else {
    set_pcc_missing(row, kSelf);
    fill_assessed(row, nullptr, kSelf);
  }
  return row;
}

MetricRow build_pair_row(const UtteranceRecord *original,
                         const RecordAnalysis *original_analysis,
                         const UtteranceRecord &reconstructed,
                         const RecordAnalysis &reconstructed_analysis,
                         const ToolkitConfig &cfg) {
  MetricRow row;
  const RecordAnalysis &rec = reconstructed_analysis;
  fill_own(row, reconstructed, rec);

  if (original == nullptr || original_analysis == nullptr) {
    set_pair_missing(row, kNoOriginal);
  } else {
    const RecordAnalysis &orig = *original_analysis;
    if (!orig.embedding.present()) {
      row[MetricId::kSimilarity] = Metric::missing(side_reason(orig.embedding, "original"));
    } else if (!rec.embedding.present()) {
      row[MetricId::kSimilarity] =
          Metric::missing(side_reason(rec.embedding, "reconstructed"));
    } else {
      try {
        row[MetricId::kSimilarity] =
            Metric::of(cosine_similarity(orig.embedding.value->values, rec.embedding.value->values));
      } catch (const Error &e) {
        row[MetricId::kSimilarity] = Metric::missing(failure("similarity", e));
      }
    }

    std::string pitch_missing;
    if (!orig.f0_mean_hz.present())
      pitch_missing = side_reason(orig.f0_mean_hz, "original");
    else if (!rec.f0_mean_hz.present())
      pitch_missing = side_reason(rec.f0_mean_hz, "reconstructed");
    if (pitch_missing.empty()) {
      const auto cmp = compare_pitch(*orig.f0_mean_hz.value, *rec.f0_mean_hz.value);
      row[MetricId::kF0DiffPct] = Metric::of(cmp.relative_deviation_pct);
      row[MetricId::kSemitoneDiff] = Metric::of(cmp.semitone_diff);
    } else {
      row[MetricId::kF0DiffPct] = Metric::missing(pitch_missing);
      row[MetricId::kSemitoneDiff] = Metric::missing(pitch_missing);
    }
  }

  if (cfg.pcc_reference == PccReference::kTarget) {
    fill_pcc(row, target_ipa(rec, original_analysis), "target", rec.ipa_predicted,
             "reconstructed", cfg);
    fill_assessed(row, &reconstructed, kNoOriginal);
  } else if (original_analysis == nullptr) {
    set_pcc_missing(row, kNoOriginal);
    fill_assessed(row, nullptr, kNoOriginal);
  } else {
    // The reconstruction stands in for the corrected target; the original is
    // the sample being assessed.
    fill_pcc(row, rec.ipa_predicted, "reconstructed", original_analysis->ipa_predicted,
             "original", cfg);
    fill_assessed(row, original, kNoOriginal);
  }
  return row;
}

MetricRow evaluate_pair(const UtteranceRecord &original,
                        const UtteranceRecord &reconstructed, const ToolkitConfig &cfg) {
  if (original.utterance_id != reconstructed.utterance_id)
    throw Error(Errc::kInvalidArgument, "evaluate_pair: utterance ids differ (" +
                                            original.utterance_id + " vs " +
                                            reconstructed.utterance_id + ")");
  if (original.method == reconstructed.method)
    throw Error(Errc::kInvalidArgument, "evaluate_pair: both records use method " +
                                            original.method);
  if (!has_metric_inputs(original) && !has_metric_inputs(reconstructed))
    throw Error(Errc::kNoMetricInputs,
                "evaluate_pair: no metric inputs for utterance " + original.utterance_id);
  const ConsonantInventory inventory =
      cfg.consonant_inventory.empty() ? ConsonantInventory::standard()
                                      : ConsonantInventory::load(cfg.consonant_inventory);
  const auto orig = analyze_record(original, cfg, inventory);
  const auto rec = analyze_record(reconstructed, cfg, inventory);
  return build_pair_row(&original, &orig, reconstructed, rec, cfg);
}

bool method_less(std::string_view a, std::string_view b, std::string_view original_method) {
  const bool a_orig = a == original_method;
  const bool b_orig = b == original_method;
  if (a_orig != b_orig) return a_orig;
  return a < b;
}

std::vector<GroupAggregate> aggregate(std::span<const MetricRow> rows, GroupBy group_by,
                                      const ToolkitConfig &cfg) {
  if (rows.empty()) throw Error(Errc::kInsufficientData, "aggregate: no rows");

  auto key_of = [&](const MetricRow &row) {
    switch (group_by) {
      case GroupBy::kSpeaker: return row.speaker_id;
      case GroupBy::kMethod: return row.method;
      case GroupBy::kGroup: break;
    }
    return row.group.value_or("(none)");
  };
  auto key_less = [&](const std::pair<std::string, std::string> &x,
                      const std::pair<std::string, std::string> &y) {
    if (x.first != y.first) return x.first < y.first;
    return method_less(x.second, y.second, cfg.original_method);
  };
  std::map<std::pair<std::string, std::string>, std::vector<const MetricRow *>,
           decltype(key_less)>
      buckets(key_less);
  for (const auto &row : rows) buckets[{key_of(row), row.method}].push_back(&row);

  std::vector<GroupAggregate> out;
  for (const auto &[key, members] : buckets) {
    GroupAggregate g;
    g.group_key = key.first;
    g.method = key.second;
    g.n_rows = members.size();
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      double sum = 0.0;
      auto &s = g.metrics[m];
      for (const MetricRow *row : members) {
        if (row->metrics[m].present()) {
          sum += *row->metrics[m].value;
          ++s.n_present;
        } else {
          ++s.n_missing;
        }
      }
      if (s.n_present > 0) s.mean = sum / static_cast<double>(s.n_present);
    }

    auto pooled = [&](MetricId num, MetricId den) -> std::optional<double> {
      double matches = 0.0;
      double total = 0.0;
      for (const MetricRow *row : members) {
        if ((*row)[num].present() && (*row)[den].present() && *(*row)[den].value > 0) {
          matches += *(*row)[num].value;
          total += *(*row)[den].value;
        }
      }
      if (total <= 0.0) return std::nullopt;
      return 100.0 * matches / total;
    };
    g.pooled_auto_pcc = pooled(MetricId::kAutoPccMatches, MetricId::kAutoPccTotal);
    g.pooled_clinician_pcc = pooled(MetricId::kClinicianCorrect, MetricId::kClinicianTotal);
    if (g[MetricId::kSimilarity].mean)
      g.similarity_meets_threshold = *g[MetricId::kSimilarity].mean >= cfg.similarity_threshold;
    out.push_back(std::move(g));
  }
  return out;
}

MethodComparison compare_methods(std::span<const MetricRow> rows, MetricId metric,
                                 std::string_view method_a, std::string_view method_b) {
  std::map<std::string, double> a_values;
  std::map<std::string, double> b_values;
  for (const auto &row : rows) {
    if (!row[metric].present()) continue;
    if (row.method == method_a) a_values[row.utterance_id] = *row[metric].value;
    if (row.method == method_b) b_values[row.utterance_id] = *row[metric].value;
  }
  std::vector<double> a, b;
  for (const auto &[id, value] : a_values) {
    const auto it = b_values.find(id);
    if (it == b_values.end()) continue;
    a.push_back(value);
    b.push_back(it->second);
  }
  if (a.size() < 2)
    throw Error(Errc::kInsufficientOverlap,
                "compare_methods: " + std::to_string(a.size()) + " shared utterances with " +
                    std::string(metric_name(metric)) + " for " + std::string(method_a) +
                    " and " + std::string(method_b) + ", need 2");

  MethodComparison out;
  out.metric = metric;
  out.method_a = method_a;
  out.method_b = method_b;
  out.n_paired = a.size();
  out.mean_a = mean(a);
  out.mean_b = mean(b);
  out.delta = out.mean_a - out.mean_b;
  out.test = welch_t_test(a, b);
  return out;
}

std::vector<CorrelationEntry> correlate_with_clinician(std::span<const MetricRow> rows,
                                                       const ToolkitConfig &cfg) {
  std::vector<std::string> methods;
  for (const auto &row : rows)
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
      methods.push_back(row.method);
  std::sort(methods.begin(), methods.end(), [&](const auto &x, const auto &y) {
    return method_less(x, y, cfg.original_method);
  });

  std::vector<const MetricRow *> ordered;
  for (const auto &row : rows) ordered.push_back(&row);
  std::stable_sort(ordered.begin(), ordered.end(), [](const MetricRow *x, const MetricRow *y) {
    return x->utterance_id < y->utterance_id;
  });

  const std::array<std::pair<MetricId, MetricId>, 2> pairs = {{
      {MetricId::kConsonantDistance, MetricId::kAssessedClinicianErrors},
      {MetricId::kAutoPcc, MetricId::kAssessedClinicianPcc},
  }};

  std::vector<CorrelationEntry> out;
  for (const auto &method : methods) {
    for (const auto &[automatic, clinician] : pairs) {
      CorrelationEntry entry;
      entry.method = method;
      entry.automatic = automatic;
      entry.clinician = clinician;
      std::vector<double> x, y;
      for (const MetricRow *row : ordered) {
        if (row->method != method || !(*row)[automatic].present() ||
            !(*row)[clinician].present())
          continue;
        entry.utterance_ids.push_back(row->utterance_id);
        x.push_back(*(*row)[automatic].value);
        y.push_back(*(*row)[clinician].value);
      }
      if (x.empty()) continue;
      try {
        entry.result = Computed<CorrelationResult>::of(pearson(x, y));
      } catch (const Error &e) {
        entry.result = Computed<CorrelationResult>::missing(
            "not computed: " + std::string(to_string(e.code())));
      }
      out.push_back(std::move(entry));
    }
  }
  return out;
}

EvaluationReport evaluate_manifest(std::span<const UtteranceRecord> records,
                                   const ToolkitConfig &cfg, unsigned jobs) {
  const ConsonantInventory inventory =
      cfg.consonant_inventory.empty() ? ConsonantInventory::standard()
                                      : ConsonantInventory::load(cfg.consonant_inventory);

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (records[x].utterance_id != records[y].utterance_id)
      return records[x].utterance_id < records[y].utterance_id;
    return method_less(records[x].method, records[y].method, cfg.original_method);
  });

  std::map<std::string, std::size_t> original_of;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].method == cfg.original_method) original_of[records[i].utterance_id] = i;

  for (const auto &rec : records) {
    const auto it = original_of.find(rec.utterance_id);
    const bool original_has = it != original_of.end() && has_metric_inputs(records[it->second]);
    if (!has_metric_inputs(rec) && !original_has)
      throw Error(Errc::kNoMetricInputs, "utterance " + rec.utterance_id + " (" + rec.method +
                                             "): no metric inputs on either side");
  }

  std::vector<RecordAnalysis> analyses(records.size());
  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure_ptr;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t i = next++; i < records.size(); i = next++) {
        try {
          analyses[i] = analyze_record(records[i], cfg, inventory);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure_ptr) failure_ptr = std::current_exception();
        }
      }
    };
    const unsigned n_threads =
        std::clamp<unsigned>(jobs, 1u, static_cast<unsigned>(std::max<std::size_t>(records.size(), 1)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure_ptr) std::rethrow_exception(failure_ptr);
  }

  EvaluationReport report;
  report.config = cfg;
  for (std::size_t i : order) {
    const auto &rec = records[i];
    if (rec.method == cfg.original_method) {
      report.rows.push_back(build_original_row(rec, analyses[i], cfg));
      continue;
    }
    const auto it = original_of.find(rec.utterance_id);
    if (it == original_of.end())
      report.rows.push_back(build_pair_row(nullptr, nullptr, rec, analyses[i], cfg));
    else
      report.rows.push_back(build_pair_row(&records[it->second], &analyses[it->second], rec,
                                           analyses[i], cfg));
  }
  if (report.rows.empty()) return report;

  report.groups = aggregate(report.rows, cfg.group_by, cfg);

  std::vector<std::string> methods;
  for (const auto &row : report.rows)
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
      methods.push_back(row.method);
  std::sort(methods.begin(), methods.end(), [&](const auto &x, const auto &y) {
    return method_less(x, y, cfg.original_method);
  });
  for (MetricId metric : compared_metrics()) {
    auto has_metric = [&](const std::string &method) {
      return std::any_of(report.rows.begin(), report.rows.end(), [&](const MetricRow &r) {
        return r.method == method && r[metric].present();
      });
    };
    for (std::size_t i = 0; i < methods.size(); ++i) {
      if (!has_metric(methods[i])) continue;
      for (std::size_t j = i + 1; j < methods.size(); ++j) {
        if (!has_metric(methods[j])) continue;
        ComparisonEntry entry;
        entry.metric = metric;
        entry.method_a = methods[i];
        entry.method_b = methods[j];
        try {
          entry.result = Computed<MethodComparison>::of(
              compare_methods(report.rows, metric, methods[i], methods[j]));
        } catch (const Error &e) {
          entry.result = Computed<MethodComparison>::missing(
              "not computed: " + std::string(to_string(e.code())));
        }
        report.comparisons.push_back(std::move(entry));
      }
    }
  }

  report.correlations = correlate_with_clinician(report.rows, cfg);
  return report;
}

}  // namespace clineval
