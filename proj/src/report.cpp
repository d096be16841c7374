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

#include "clineval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "clineval/error.hpp"

namespace clineval {

namespace {

using ojson = nlohmann::ordered_json;

struct TableMetric {
  MetricId id;
  const char *label;
  bool pairwise;  // self-comparison for the original method
};

constexpr TableMetric kTableMetrics[] = {
    {MetricId::kCer, "CER", false},
    {MetricId::kWer, "WER", false},
    {MetricId::kConfidence, "Confidence", false},
    {MetricId::kSimilarity, "Speaker similarity", true},
    {MetricId::kF0DiffPct, "F0 difference (%)", true},
};

ojson number(double v) { return round_sig6(v); }

ojson optional_number(const std::optional<double> &v) {
  return v ? number(*v) : ojson(nullptr);
}

std::vector<std::string> report_methods(const EvaluationReport &report) {
  std::vector<std::string> methods;
  for (const auto &row : report.rows)
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
      methods.push_back(row.method);
  std::sort(methods.begin(), methods.end(), [&](const auto &a, const auto &b) {
    return method_less(a, b, report.config.original_method);
  });
  return methods;
}

ojson row_json(const MetricRow &row) {
  ojson metrics = ojson::object();
  ojson missing = ojson::object();
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    const auto name = std::string(metric_name(static_cast<MetricId>(m)));
    if (row.metrics[m].present())
      metrics[name] = number(*row.metrics[m].value);
    else
      missing[name] = row.metrics[m].reason;
  }
  ojson out;
  out["utterance_id"] = row.utterance_id;
  out["speaker_id"] = row.speaker_id;
  out["group"] = row.group ? ojson(*row.group) : ojson(nullptr);
  out["method"] = row.method;
  out["metrics"] = metrics;
  out["missing"] = missing;
  return out;
}

ojson group_json(const GroupAggregate &g) {
  ojson metrics = ojson::object();
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    const auto &s = g.metrics[m];
    ojson entry;
    entry["mean"] = optional_number(s.mean);
    entry["n_present"] = s.n_present;
    entry["n_missing"] = s.n_missing;
    metrics[std::string(metric_name(static_cast<MetricId>(m)))] = entry;
  }
  ojson out;
  out["group"] = g.group_key;
  out["method"] = g.method;
  out["n_rows"] = g.n_rows;
  out["metrics"] = metrics;
  out["pooled_auto_pcc"] = optional_number(g.pooled_auto_pcc);
  out["mean_auto_pcc"] = optional_number(g[MetricId::kAutoPcc].mean);
  out["pooled_clinician_pcc"] = optional_number(g.pooled_clinician_pcc);
  out["mean_clinician_pcc"] = optional_number(g[MetricId::kClinicianPcc].mean);
  out["similarity_meets_threshold"] =
      g.similarity_meets_threshold ? ojson(*g.similarity_meets_threshold) : ojson(nullptr);
  return out;
}

ojson comparison_json(const ComparisonEntry &c) {
  ojson out;
  out["metric"] = metric_name(c.metric);
  out["method_a"] = c.method_a;
  out["method_b"] = c.method_b;
  if (!c.result.present()) {
    out["missing"] = c.result.reason;
    return out;
  }
  const auto &r = *c.result.value;
  out["n_paired"] = r.n_paired;
  out["mean_a"] = number(r.mean_a);
  out["mean_b"] = number(r.mean_b);
  out["delta"] = number(r.delta);
  out["t_stat"] = number(r.test.t_stat);
  out["dof"] = number(r.test.dof);
  out["p_value"] = number(r.test.p_value);
  out["significant_at_05"] = r.test.significant_at_05;
  return out;
}

ojson correlation_json(const CorrelationEntry &c) {
  ojson out;
  out["method"] = c.method;
  out["automatic"] = metric_name(c.automatic);
  out["clinician"] = metric_name(c.clinician);
  out["utterance_ids"] = c.utterance_ids;
  if (c.result.present()) {
    out["n"] = c.result.value->n;
    out["rho"] = number(c.result.value->rho);
  } else {
    out["n"] = c.utterance_ids.size();
    out["missing"] = c.result.reason;
  }
  return out;
}

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const ojson &v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_sig6(v.get<double>());
  return csv_escape(v.dump());
}

void write_file(const std::filesystem::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIo, path.string() + ": cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw Error(Errc::kIo, path.string() + ": write failed");
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string> &header) { row(header); }

  void row(const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

}  // namespace

ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  throw Error(Errc::kInvalidArgument, "unknown report format '" + std::string(s) + "'");
}

double round_sig6(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  return std::strtod(format_sig6(v).c_str(), nullptr);
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

SummaryTable summary_table(const EvaluationReport &report) {
  SummaryTable table;
  const auto methods = report_methods(report);
  table.columns = {"metric", std::string(to_string(report.config.group_by))};
  table.columns.insert(table.columns.end(), methods.begin(), methods.end());

  std::vector<std::string> keys;
  for (const auto &g : report.groups)
    if (std::find(keys.begin(), keys.end(), g.group_key) == keys.end())
      keys.push_back(g.group_key);

  for (const auto &tm : kTableMetrics) {
    for (const auto &key : keys) {
      ojson row = ojson::array({tm.label, key});
      for (const auto &method : methods) {
        if (tm.pairwise && method == report.config.original_method) {
          row.push_back("---");
          continue;
        }
        const auto it = std::find_if(report.groups.begin(), report.groups.end(),
                                     [&](const GroupAggregate &g) {
                                       return g.group_key == key && g.method == method;
                                     });
        row.push_back(it == report.groups.end() ? ojson(nullptr)
                                                : optional_number((*it)[tm.id].mean));
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

nlohmann::ordered_json report_to_json(const EvaluationReport &report) {
  ojson rows = ojson::array();
  for (const auto &row : report.rows) rows.push_back(row_json(row));

  ojson groups = ojson::array();
  for (const auto &g : report.groups) groups.push_back(group_json(g));
  const auto table = summary_table(report);
  ojson table_json;
  table_json["columns"] = table.columns;
  table_json["rows"] = table.rows;
  ojson per_group;
  per_group["group_by"] = to_string(report.config.group_by);
  per_group["aggregates"] = groups;
  per_group["table"] = table_json;

  ojson comparisons = ojson::array();
  for (const auto &c : report.comparisons) comparisons.push_back(comparison_json(c));
  ojson correlations = ojson::array();
  for (const auto &c : report.correlations) correlations.push_back(correlation_json(c));

  ojson out;
  out["config_echo"] = config_to_json(report.config);
  out["per_utterance"] = rows;
  out["per_group"] = per_group;
  out["method_comparisons"] = comparisons;
  out["correlations"] = correlations;
  return out;
}

std::vector<std::filesystem::path> emit_report(const EvaluationReport &report,
                                               ReportFormat format,
                                               const std::filesystem::path &out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::kIo, out_dir.string() + ": " + ec.message());

  const ojson doc = report_to_json(report);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const char *name, const std::string &content) {
    const auto path = out_dir / name;
    write_file(path, content);
    written.push_back(path);
  };

  if (format == ReportFormat::kJson) {
    emit("report.json", doc.dump(2) + "\n");
    return written;
  }

  {
    std::vector<std::string> header = {"utterance_id", "speaker_id", "group", "method"};
    for (std::size_t m = 0; m < kMetricCount; ++m)
      header.emplace_back(metric_name(static_cast<MetricId>(m)));
    header.emplace_back("missing");
    CsvWriter csv(header);
    for (const auto &row : doc["per_utterance"]) {
      std::vector<std::string> cells = {csv_cell(row["utterance_id"]),
                                        csv_cell(row["speaker_id"]), csv_cell(row["group"]),
                                        csv_cell(row["method"])};
      std::string missing;
      for (std::size_t m = 0; m < kMetricCount; ++m) {
        const auto name = std::string(metric_name(static_cast<MetricId>(m)));
        if (row["metrics"].contains(name)) {
          cells.push_back(csv_cell(row["metrics"][name]));
        } else {
          cells.emplace_back();
          if (!missing.empty()) missing += "; ";
          missing += name + "=" + row["missing"][name].get<std::string>();
        }
      }
      cells.push_back(csv_escape(missing));
      csv.row(cells);
    }
    emit("per_utterance.csv", csv.str());
  }

  {
    std::vector<std::string> header = {"group", "method", "n_rows"};
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      const auto name = std::string(metric_name(static_cast<MetricId>(m)));
      header.push_back(name + "_mean");
      header.push_back(name + "_n");
      header.push_back(name + "_n_missing");
    }
    for (const char *extra : {"pooled_auto_pcc", "mean_auto_pcc", "pooled_clinician_pcc",
                              "mean_clinician_pcc", "similarity_meets_threshold"})
      header.emplace_back(extra);
    CsvWriter csv(header);
    for (const auto &g : doc["per_group"]["aggregates"]) {
      std::vector<std::string> cells = {csv_cell(g["group"]), csv_cell(g["method"]),
                                        csv_cell(g["n_rows"])};
      for (std::size_t m = 0; m < kMetricCount; ++m) {
        const auto &s = g["metrics"][std::string(metric_name(static_cast<MetricId>(m)))];
        cells.push_back(csv_cell(s["mean"]));
        cells.push_back(csv_cell(s["n_present"]));
        cells.push_back(csv_cell(s["n_missing"]));
      }
      for (const char *extra : {"pooled_auto_pcc", "mean_auto_pcc", "pooled_clinician_pcc",
                                "mean_clinician_pcc", "similarity_meets_threshold"})
        cells.push_back(csv_cell(g[extra]));
      csv.row(cells);
    }
    emit("per_group.csv", csv.str());
  }

  {
    const auto &table = doc["per_group"]["table"];
    std::vector<std::string> header;
    for (const auto &c : table["columns"]) header.push_back(csv_cell(c));
    CsvWriter csv(header);
    for (const auto &row : table["rows"]) {
      std::vector<std::string> cells;
      for (const auto &c : row) cells.push_back(csv_cell(c));
      csv.row(cells);
    }
    emit("summary_table.csv", csv.str());
  }

  {
    const std::vector<std::string> fields = {
        "metric", "method_a", "method_b", "n_paired", "mean_a", "mean_b", "delta",
        "t_stat", "dof",      "p_value",  "significant_at_05", "missing"};
    CsvWriter csv(fields);
    for (const auto &c : doc["method_comparisons"]) {
      std::vector<std::string> cells;
      for (const auto &f : fields) cells.push_back(c.contains(f) ? csv_cell(c[f]) : "");
      csv.row(cells);
    }
    emit("method_comparisons.csv", csv.str());
  }

  {
    const std::vector<std::string> fields = {"method", "automatic", "clinician", "n", "rho",
                                             "utterance_ids", "missing"};
    CsvWriter csv(fields);
    for (const auto &c : doc["correlations"]) {
      std::vector<std::string> cells;
      for (const auto &f : fields) {
        if (f == "utterance_ids") {
          std::string ids;
          for (const auto &id : c[f]) ids += (ids.empty() ? "" : " ") + id.get<std::string>();
          cells.push_back(csv_escape(ids));
        } else {
          cells.push_back(c.contains(f) ? csv_cell(c[f]) : "");
        }
      }
      csv.row(cells);
    }
    emit("correlations.csv", csv.str());
  }

  {
    CsvWriter csv({"key", "value"});
    const auto flat = nlohmann::json(doc["config_echo"]).flatten();
    for (const auto &[key, value] : flat.items())
      csv.row({csv_escape(key), csv_cell(ojson(value))});
    emit("config_echo.csv", csv.str());
  }
  return written;
}

}  // namespace clineval
