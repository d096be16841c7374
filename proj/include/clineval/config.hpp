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

#include <cstddef>
#include <string>
#include <string_view>

#include "clineval/align.hpp"
#include "clineval/pitch.hpp"
#include "clineval/stats.hpp"
#include "json.hpp"

namespace clineval {

/// What the automatic PCC aligns the original's predicted IPA against.
enum class PccReference {
  kReconstructed,  // the reconstruction's predicted IPA
  kTarget,         // the ground-truth target form (ipa_target)
};

enum class GroupBy { kSpeaker, kGroup, kMethod };

/// Every knob that influences a report. Serialized verbatim into the report
/// so a run can be repeated from its own output.
struct ToolkitConfig {
  YinConfig yin;
  F0Statistic f0_statistic = F0Statistic::kMean;
  PccReference pcc_reference = PccReference::kReconstructed;
  MatchMode ipa_match = MatchMode::kStrict;
  TextNormalization text;
  std::size_t max_sequence_length = kDefaultMaxSequenceLength;
  GroupBy group_by = GroupBy::kGroup;
  /// Annotation only; never used to filter rows.
  double similarity_threshold = 0.6;
  std::string original_method = "original";
  /// Empty means the built-in inventory.
  std::string consonant_inventory;
};

std::string_view to_string(PccReference v);
std::string_view to_string(GroupBy v);
std::string_view to_string(MatchMode v);
std::string_view to_string(F0Statistic v);

/// Parsers accept the names produced by to_string(); "severity" is accepted
/// as an alias for GroupBy::kGroup. Throw kInvalidArgument otherwise.
PccReference parse_pcc_reference(std::string_view s);
GroupBy parse_group_by(std::string_view s);
MatchMode parse_match_mode(std::string_view s);
F0Statistic parse_f0_statistic(std::string_view s);

nlohmann::ordered_json config_to_json(const ToolkitConfig &cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
ToolkitConfig config_from_json(const nlohmann::json &doc);

}  // namespace clineval
