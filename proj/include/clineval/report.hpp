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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clineval/harness.hpp"
#include "json.hpp"

namespace clineval {

enum class ReportFormat { kJson, kCsv };

ReportFormat parse_report_format(std::string_view s);

/// Rounds to 6 significant digits, the precision every report value is
/// written with.
double round_sig6(double v);
/// "%.6g" formatting used by the CSV writer.
std::string format_sig6(double v);

/// Summary laid out as metric x group rows and one column per method. Cells
/// hold a number, "---" for a method's self-comparison, or null for no data.
struct SummaryTable {
  std::vector<std::string> columns;
  std::vector<nlohmann::ordered_json> rows;  // each an array matching columns
};

SummaryTable summary_table(const EvaluationReport &report);

nlohmann::ordered_json report_to_json(const EvaluationReport &report);

/// Writes `report.json` (kJson) or one CSV per section (kCsv) into `out_dir`,
/// creating it if needed. Output is byte-identical for identical reports.
/// Returns the files written. Throws Error(kIo).
std::vector<std::filesystem::path> emit_report(const EvaluationReport &report,
                                               ReportFormat format,
                                               const std::filesystem::path &out_dir);

}  // namespace clineval
