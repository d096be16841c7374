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

#include "clineval/config.hpp"

#include <set>

#include "clineval/error.hpp"

namespace clineval {

std::string_view to_string(PccReference v) {
  return v == PccReference::kTarget ? "target" : "reconstructed";
}

std::string_view to_string(GroupBy v) {
  switch (v) {
    case GroupBy::kSpeaker: return "speaker";
    case GroupBy::kGroup: return "group";
    case GroupBy::kMethod: return "method";
  }
  return "group";
}

std::string_view to_string(MatchMode v) {
  return v == MatchMode::kBaseOnly ? "base" : "strict";
}

std::string_view to_string(F0Statistic v) {
  return v == F0Statistic::kMedian ? "median" : "mean";
}

namespace {

[[noreturn]] void bad_value(std::string_view what, std::string_view value) {
  throw Error(Errc::kInvalidArgument,
              "unknown " + std::string(what) + " '" + std::string(value) + "'");
}

}  // namespace

PccReference parse_pcc_reference(std::string_view s) {
  if (s == "reconstructed") return PccReference::kReconstructed;
  if (s == "target") return PccReference::kTarget;
  bad_value("PCC reference", s);
}

GroupBy parse_group_by(std::string_view s) {
  if (s == "speaker") return GroupBy::kSpeaker;
  if (s == "group" || s == "severity") return GroupBy::kGroup;
  if (s == "method") return GroupBy::kMethod;
  bad_value("grouping", s);
}

MatchMode parse_match_mode(std::string_view s) {
  if (s == "strict") return MatchMode::kStrict;
  if (s == "base") return MatchMode::kBaseOnly;
  bad_value("IPA match mode", s);
}

F0Statistic parse_f0_statistic(std::string_view s) {
  if (s == "mean") return F0Statistic::kMean;
  if (s == "median") return F0Statistic::kMedian;
  bad_value("f0 statistic", s);
}

nlohmann::ordered_json config_to_json(const ToolkitConfig &cfg) {
  nlohmann::ordered_json yin;
  yin["f0_min"] = cfg.yin.f0_min;
  yin["f0_max"] = cfg.yin.f0_max;
  yin["threshold"] = cfg.yin.threshold;
  yin["frame_len"] = cfg.yin.frame_len;
  yin["hop"] = cfg.yin.hop;
  yin["silence_rms"] = cfg.yin.silence_rms;

  nlohmann::ordered_json text;
  text["case_fold"] = cfg.text.case_fold;
  text["strip_punctuation"] = cfg.text.strip_punctuation;

  nlohmann::ordered_json out;
  out["yin"] = yin;
  out["f0_statistic"] = to_string(cfg.f0_statistic);
  out["pcc_reference"] = to_string(cfg.pcc_reference);
  out["ipa_match"] = to_string(cfg.ipa_match);
  out["text_normalization"] = text;
  out["max_sequence_length"] = cfg.max_sequence_length;
  out["group_by"] = to_string(cfg.group_by);
  out["similarity_threshold"] = cfg.similarity_threshold;
  out["significance_level"] = 0.05;
  out["original_method"] = cfg.original_method;
  out["consonant_inventory"] =
      cfg.consonant_inventory.empty() ? "builtin" : cfg.consonant_inventory;
  return out;
}

namespace {

void check_keys(const nlohmann::json &obj, const std::set<std::string> &allowed,
                std::string_view where) {
  if (!obj.is_object())
    throw Error(Errc::kSchema, std::string(where) + ": expected an object");
  for (const auto &[key, value] : obj.items())
    if (!allowed.contains(key))
      throw Error(Errc::kSchema, std::string(where) + ": unknown key '" + key + "'");
}

template <typename T>
void read(const nlohmann::json &obj, const char *key, T &out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(Errc::kSchema, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

ToolkitConfig config_from_json(const nlohmann::json &doc) {
  check_keys(doc,
             {"yin", "f0_statistic", "pcc_reference", "ipa_match",
              "text_normalization", "max_sequence_length", "group_by",
              "similarity_threshold", "significance_level", "original_method",
              "consonant_inventory"},
             "config");
  ToolkitConfig cfg;
  if (doc.contains("yin")) {
    const auto &yin = doc.at("yin");
    check_keys(yin, {"f0_min", "f0_max", "threshold", "frame_len", "hop", "silence_rms"},
               "config.yin");
    read(yin, "f0_min", cfg.yin.f0_min);
    read(yin, "f0_max", cfg.yin.f0_max);
    read(yin, "threshold", cfg.yin.threshold);
    read(yin, "frame_len", cfg.yin.frame_len);
    read(yin, "hop", cfg.yin.hop);
    read(yin, "silence_rms", cfg.yin.silence_rms);
  }
  if (doc.contains("text_normalization")) {
    const auto &text = doc.at("text_normalization");
    check_keys(text, {"case_fold", "strip_punctuation"}, "config.text_normalization");
    read(text, "case_fold", cfg.text.case_fold);
    read(text, "strip_punctuation", cfg.text.strip_punctuation);
  }
  std::string s;
  if (doc.contains("f0_statistic")) {
    read(doc, "f0_statistic", s);
    cfg.f0_statistic = parse_f0_statistic(s);
  }
  if (doc.contains("pcc_reference")) {
    read(doc, "pcc_reference", s);
    cfg.pcc_reference = parse_pcc_reference(s);
  }
  if (doc.contains("ipa_match")) {
    read(doc, "ipa_match", s);
    cfg.ipa_match = parse_match_mode(s);
  }
  if (doc.contains("group_by")) {
    read(doc, "group_by", s);
    cfg.group_by = parse_group_by(s);
  }
  read(doc, "max_sequence_length", cfg.max_sequence_length);
  read(doc, "similarity_threshold", cfg.similarity_threshold);
  read(doc, "original_method", cfg.original_method);
  if (doc.contains("significance_level")) {
    double level = 0.05;
    read(doc, "significance_level", level);
    if (level != 0.05)
      throw Error(Errc::kSchema, "config: significance_level is fixed at 0.05");
  }
  if (doc.contains("consonant_inventory")) {
    read(doc, "consonant_inventory", s);
    cfg.consonant_inventory = s == "builtin" ? "" : s;
  }
  return cfg;
}

}  // namespace clineval
