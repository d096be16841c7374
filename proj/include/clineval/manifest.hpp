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

// Manifest schema. A JSON manifest looks like
//
//   {"records": [
//     {"utterance_id": "u01", "speaker_id": "s1", "group": "mild",
//      "method": "original", "audio_path": "wav/u01.wav",
//      "target_text": "...", "asr_hypothesis": "...",
//      "asr_word_confidences": [0.9, 0.4], "ipa_predicted": "...",
//      "ipa_target": "...", "embedding_ref": "emb/u01.json",
//      "embedding_format": "json", "clinician_correct": 5,
//      "clinician_total": 7}, ...]}
//
// Only utterance_id, speaker_id and method are required. A CSV manifest has
// a header row with the same field names; asr_word_confidences is a
// space-separated list and empty cells mean "absent".

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clineval/stats.hpp"
#include "json.hpp"

namespace clineval {

struct UtteranceRecord {
  std::string utterance_id;
  std::string speaker_id;
  std::optional<std::string> group;
  std::string method;
  std::optional<std::filesystem::path> audio_path;
  std::optional<std::string> target_text;
  std::optional<std::string> asr_hypothesis;
  std::optional<std::vector<double>> asr_word_confidences;
  std::optional<std::string> ipa_predicted;
  std::optional<std::string> ipa_target;
  std::optional<std::filesystem::path> embedding_ref;
  /// Defaults to kJson for *.json files and kFloat32 otherwise.
  EmbeddingFormat embedding_format = EmbeddingFormat::kJson;
  std::optional<long long> clinician_correct;
  std::optional<long long> clinician_total;
};

/// Loads a .json or .csv manifest (chosen by extension). Relative paths are
/// resolved against the manifest's directory. Throws ManifestError with
/// kSchema (all schema diagnostics) or kDanglingReference (all missing
/// files), and Error(kMissingFile) when the manifest itself cannot be read.
std::vector<UtteranceRecord> load_manifest(const std::filesystem::path &path);

/// Schema validation of an already-parsed JSON manifest. Checks file
/// references only when `check_files` is set.
std::vector<UtteranceRecord> parse_manifest_json(const nlohmann::json &doc,
                                                 const std::filesystem::path &base_dir,
                                                 bool check_files = true);

std::vector<UtteranceRecord> parse_manifest_csv(std::string_view text,
                                                const std::filesystem::path &base_dir,
                                                bool check_files = true);

}  // namespace clineval
