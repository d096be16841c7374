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

// clineval evaluate --manifest <file> --out <dir> --format json|csv ...
//
// Exit status: 0 on success, 1 on validation errors, 2 on I/O errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "clineval/error.hpp"
#include "clineval/harness.hpp"
#include "clineval/manifest.hpp"
#include "clineval/report.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int exit_code_for(clineval::Errc code) {
  using clineval::Errc;
  switch (code) {
    case Errc::kMissingFile:
    case Errc::kIo:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Speech reconstruction evaluation: pitch, lexical, clinical metrics"};
  app.require_subcommand(1);

  auto *evaluate = app.add_subcommand("evaluate", "Evaluate a manifest and write a report");
  std::string manifest_path;
  std::string out_dir;
  std::string format = "json";
  std::string config_path;
  std::optional<std::string> group_by, pcc_reference, ipa_match, inventory;
  std::optional<double> yin_fmin, yin_fmax, yin_threshold;
  unsigned jobs = 1;

  evaluate->add_option("--manifest", manifest_path, "Manifest file (.json or .csv)")
      ->required();
  evaluate->add_option("--out", out_dir, "Output directory")->required();
  evaluate->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  evaluate->add_option("--config", config_path,
                       "JSON config, e.g. the config_echo of an earlier report");
  evaluate->add_option("--group-by", group_by, "Aggregate by speaker, group or method")
      ->check(CLI::IsMember({"speaker", "group", "severity", "method"}));
  evaluate->add_option("--pcc-reference", pcc_reference, "Automatic PCC reference")
      ->check(CLI::IsMember({"reconstructed", "target"}));
  evaluate->add_option("--ipa-match", ipa_match, "Consonant match mode")
      ->check(CLI::IsMember({"strict", "base"}));
  evaluate->add_option("--consonants", inventory, "Consonant inventory file");
  evaluate->add_option("--yin-fmin", yin_fmin, "YIN lower f0 bound (Hz)");
  evaluate->add_option("--yin-fmax", yin_fmax, "YIN upper f0 bound (Hz)");
  evaluate->add_option("--yin-threshold", yin_threshold, "YIN CMNDF threshold");
  evaluate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    clineval::ToolkitConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw clineval::Error(clineval::Errc::kMissingFile,
                                     config_path + ": cannot open config");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error &e) {
        throw clineval::Error(clineval::Errc::kSchema, config_path + ": " + e.what());
      }
      // Accept a whole report as well as a bare config.
      cfg = clineval::config_from_json(doc.contains("config_echo") ? doc["config_echo"] : doc);
    }
    if (group_by) cfg.group_by = clineval::parse_group_by(*group_by);
    if (pcc_reference) cfg.pcc_reference = clineval::parse_pcc_reference(*pcc_reference);
    if (ipa_match) cfg.ipa_match = clineval::parse_match_mode(*ipa_match);
    if (inventory) cfg.consonant_inventory = *inventory;
    if (yin_fmin) cfg.yin.f0_min = *yin_fmin;
    if (yin_fmax) cfg.yin.f0_max = *yin_fmax;
    if (yin_threshold) cfg.yin.threshold = *yin_threshold;

    const auto records = clineval::load_manifest(manifest_path);
    const auto report = clineval::evaluate_manifest(records, cfg, jobs);
    const auto written =
        clineval::emit_report(report, clineval::parse_report_format(format), out_dir);
    for (const auto &path : written) std::cout << path.string() << "\n";
    return 0;
  } catch (const clineval::ManifestError &e) {
    std::cerr << "manifest error (" << clineval::to_string(e.code()) << "):\n";
    for (const auto &d : e.diagnostics()) std::cerr << "  " << d << "\n";
    return exit_code_for(e.code());
  } catch (const clineval::Error &e) {
    std::cerr << "error (" << clineval::to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}
