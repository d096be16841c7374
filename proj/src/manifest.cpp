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

#include "clineval/manifest.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include "clineval/error.hpp"

namespace clineval {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownFields = {
    "utterance_id",  "speaker_id",       "group",
    "method",        "audio_path",       "target_text",
    "asr_hypothesis", "asr_word_confidences", "ipa_predicted",
    "ipa_target",    "embedding_ref",    "embedding_format",
    "clinician_correct", "clinician_total"};

const std::set<std::string> kIntegerFields = {"clinician_correct", "clinician_total"};

class Validator {
 public:
  Validator(std::filesystem::path base_dir, bool check_files)
      : base_dir_(std::move(base_dir)), check_files_(check_files) {}

  void add(const json &obj, const std::string &where) {
    if (!obj.is_object()) {
      schema_.push_back(where + ": record must be an object");
      return;
    }
    for (const auto &[key, value] : obj.items())
      if (!kKnownFields.contains(key))
        schema_.push_back(where + "." + key + ": unknown field");

    UtteranceRecord rec;
    bool ok = true;
    ok &= required_string(obj, "utterance_id", where, rec.utterance_id);
    ok &= required_string(obj, "speaker_id", where, rec.speaker_id);
    ok &= required_string(obj, "method", where, rec.method);
    ok &= optional_string(obj, "group", where, rec.group);
    ok &= optional_string(obj, "target_text", where, rec.target_text);
    ok &= optional_string(obj, "asr_hypothesis", where, rec.asr_hypothesis);
    ok &= optional_string(obj, "ipa_predicted", where, rec.ipa_predicted);
    ok &= optional_string(obj, "ipa_target", where, rec.ipa_target);

    std::optional<std::string> path;
    ok &= optional_string(obj, "audio_path", where, path);
    if (path) rec.audio_path = resolve(*path);
    path.reset();
    ok &= optional_string(obj, "embedding_ref", where, path);
    if (path) rec.embedding_ref = resolve(*path);

    std::optional<std::string> format;
    ok &= optional_string(obj, "embedding_format", where, format);
    if (format) {
      if (*format == "json") {
        rec.embedding_format = EmbeddingFormat::kJson;
      } else if (*format == "f32" || *format == "float32") {
        rec.embedding_format = EmbeddingFormat::kFloat32;
      } else {
        schema_.push_back(where + ".embedding_format: expected \"json\" or \"f32\"");
        ok = false;
      }
    } else if (rec.embedding_ref) {
      rec.embedding_format = rec.embedding_ref->extension() == ".json"
                                 ? EmbeddingFormat::kJson
                                 : EmbeddingFormat::kFloat32;
    }

    ok &= confidences(obj, where, rec.asr_word_confidences);
    const bool counts_ok =
        optional_int(obj, "clinician_correct", where, rec.clinician_correct) &
        optional_int(obj, "clinician_total", where, rec.clinician_total);
    ok &= counts_ok;
    if (counts_ok && rec.clinician_correct.has_value() != rec.clinician_total.has_value()) {
      schema_.push_back(where +
                        ": clinician_correct and clinician_total must be given together");
      ok = false;
    } else if (rec.clinician_correct && rec.clinician_total &&
               (*rec.clinician_correct < 0 ||
                *rec.clinician_correct > *rec.clinician_total)) {
      schema_.push_back(where + ".clinician_correct: " +
                        std::to_string(*rec.clinician_correct) +
                        " outside [0, clinician_total=" +
                        std::to_string(*rec.clinician_total) + "]");
      ok = false;
    }

    if (!ok) return;
    if (!keys_.insert({rec.utterance_id, rec.method}).second) {
      schema_.push_back(where + ": duplicate (utterance_id, method) = (" +
                        rec.utterance_id + ", " + rec.method + ")");
      return;
    }
    if (check_files_) {
      if (rec.audio_path && !std::filesystem::exists(*rec.audio_path))
        dangling_.push_back(where + ".audio_path: no such file " +
                            rec.audio_path->string());
      if (rec.embedding_ref && !std::filesystem::exists(*rec.embedding_ref))
        dangling_.push_back(where + ".embedding_ref: no such file " +
                            rec.embedding_ref->string());
    }
    records_.push_back(std::move(rec));
  }

  void schema_error(std::string message) { schema_.push_back(std::move(message)); }

  std::vector<UtteranceRecord> finish() && {
    if (!schema_.empty()) {
      auto all = std::move(schema_);
      all.insert(all.end(), dangling_.begin(), dangling_.end());
      throw ManifestError(Errc::kSchema, std::move(all));
    }
    if (!dangling_.empty()) throw ManifestError(Errc::kDanglingReference, std::move(dangling_));
    return std::move(records_);
  }

 private:
  std::filesystem::path resolve(const std::string &p) const {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir_ / path;
  }

  bool required_string(const json &obj, const char *key, const std::string &where,
                       std::string &out) {
    std::optional<std::string> value;
    if (!optional_string(obj, key, where, value)) return false;
    if (!value || value->empty()) {
      schema_.push_back(where + "." + key + ": required non-empty string");
      return false;
    }
    out = std::move(*value);
    return true;
  }

  bool optional_string(const json &obj, const char *key, const std::string &where,
                       std::optional<std::string> &out) {
    if (!obj.contains(key) || obj.at(key).is_null()) return true;
    if (!obj.at(key).is_string()) {
      schema_.push_back(where + "." + key + ": expected a string");
      return false;
    }
    out = obj.at(key).get<std::string>();
    return true;
  }

  bool optional_int(const json &obj, const char *key, const std::string &where,
                    std::optional<long long> &out) {
    if (!obj.contains(key) || obj.at(key).is_null()) return true;
    if (!obj.at(key).is_number_integer()) {
      schema_.push_back(where + "." + key + ": expected an integer");
      return false;
    }
    out = obj.at(key).get<long long>();
    return true;
  }

  bool confidences(const json &obj, const std::string &where,
                   std::optional<std::vector<double>> &out) {
    const char *key = "asr_word_confidences";
    if (!obj.contains(key) || obj.at(key).is_null()) return true;
    const auto &arr = obj.at(key);
    if (!arr.is_array()) {
      schema_.push_back(where + "." + key + ": expected an array of reals");
      return false;
    }
    std::vector<double> values;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number() || arr[i].get<double>() < 0.0 ||
          arr[i].get<double>() > 1.0) {
        schema_.push_back(where + "." + key + "[" + std::to_string(i) +
                          "]: expected a real in [0, 1]");
        return false;
      }
      values.push_back(arr[i].get<double>());
    }
    out = std::move(values);
    return true;
  }

  std::filesystem::path base_dir_;
  bool check_files_;
  std::vector<UtteranceRecord> records_;
  std::set<std::pair<std::string, std::string>> keys_;
  std::vector<std::string> schema_;
  std::vector<std::string> dangling_;
};

// RFC 4180 style: comma separated, double quotes escape with "".
// Returns rows with the 1-based line number each row starts on.
std::vector<std::pair<std::size_t, std::vector<std::string>>> split_csv(
    std::string_view text, std::vector<std::string> &errors) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool row_has_content = false;
  std::size_t line = 1;
  std::size_t row_line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !cell.empty()) {
          row.push_back(std::move(cell));
          rows.emplace_back(row_line, std::move(row));
        }
        row.clear();
        cell.clear();
        row_has_content = false;
        row_line = ++line;
        break;
      default:
        cell += c;
        row_has_content = true;
    }
  }
  if (quoted) errors.push_back("line " + std::to_string(row_line) + ": unterminated quote");
  if (row_has_content || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.emplace_back(row_line, std::move(row));
  }
  return rows;
}

// Converts one CSV cell to the JSON type the validator expects. Unparseable
// cells stay strings so the validator reports them.
json csv_cell(const std::string &field, const std::string &cell) {
  if (cell.empty()) return nullptr;
  if (kIntegerFields.contains(field)) {
    long long v = 0;
    const auto *end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
    if (ec == std::errc() && ptr == end) return v;
    return cell;
  }
  if (field == "asr_word_confidences") {
    json arr = json::array();
    std::istringstream in(cell);
    std::string item;
    while (in >> item) {
      try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) return cell;
        arr.push_back(v);
      } catch (const std::exception &) {
        return cell;
      }
    }
    return arr;
  }
  return cell;
}

}  // namespace

std::vector<UtteranceRecord> parse_manifest_json(const nlohmann::json &doc,
                                                 const std::filesystem::path &base_dir,
                                                 bool check_files) {
  Validator validator(base_dir, check_files);
  if (!doc.is_object() || !doc.contains("records") || !doc.at("records").is_array()) {
    validator.schema_error("manifest: expected an object with a \"records\" array");
    return std::move(validator).finish();
  }
  const auto &records = doc.at("records");
  for (std::size_t i = 0; i < records.size(); ++i)
    validator.add(records[i], "records[" + std::to_string(i) + "]");
  return std::move(validator).finish();
}

std::vector<UtteranceRecord> parse_manifest_csv(std::string_view text,
                                                const std::filesystem::path &base_dir,
                                                bool check_files) {
  Validator validator(base_dir, check_files);
  std::vector<std::string> errors;
  const auto rows = split_csv(text, errors);
  for (auto &e : errors) validator.schema_error(std::move(e));
  if (rows.empty()) return std::move(validator).finish();

  const auto &header = rows.front().second;
  for (const auto &field : header)
    if (!kKnownFields.contains(field))
      validator.schema_error("line 1: unknown column '" + field + "'");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &[line, cells] = rows[r];
    const std::string where = "line " + std::to_string(line);
    if (cells.size() != header.size()) {
      validator.schema_error(where + ": expected " + std::to_string(header.size()) +
                             " cells, found " + std::to_string(cells.size()));
      continue;
    }
    json obj = json::object();
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (kKnownFields.contains(header[c])) obj[header[c]] = csv_cell(header[c], cells[c]);
    validator.add(obj, where);
  }
  return std::move(validator).finish();
}

std::vector<UtteranceRecord> load_manifest(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kMissingFile, path.string() + ": cannot open manifest");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  const auto base_dir = path.parent_path();
  if (path.extension() == ".csv") return parse_manifest_csv(text, base_dir);

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ManifestError(Errc::kSchema, {path.string() + ": " + e.what()});
  }
  return parse_manifest_json(doc, base_dir);
}

}  // namespace clineval
