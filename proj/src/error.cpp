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

#include "clineval/error.hpp"

namespace clineval {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kMissingFile: return "missing file";
    case Errc::kUnsupportedFormat: return "unsupported format";
    case Errc::kTruncated: return "truncated";
    case Errc::kEmptyPayload: return "empty payload";
    case Errc::kCorruptData: return "corrupt data";
    case Errc::kTooShort: return "too short";
    case Errc::kInvalidArgument: return "invalid argument";
    case Errc::kLeadingCombining: return "leading combining character";
    case Errc::kEmptyReference: return "empty reference";
    case Errc::kSequenceTooLong: return "sequence too long";
    case Errc::kUnvoicedClip: return "unvoiced clip";
    case Errc::kUndefinedPcc: return "undefined PCC";
    case Errc::kLengthMismatch: return "length mismatch";
    case Errc::kZeroNorm: return "zero norm";
    case Errc::kInsufficientData: return "insufficient data";
    case Errc::kZeroVariance: return "zero variance";
    case Errc::kSchema: return "schema violation";
    case Errc::kDanglingReference: return "dangling reference";
    case Errc::kNoMetricInputs: return "no metric inputs";
    case Errc::kInsufficientOverlap: return "insufficient overlap";
    case Errc::kIo: return "I/O error";
  }
  return "unknown";
}

namespace {

std::string join_diagnostics(const std::vector<std::string> &diagnostics) {
  std::string out;
  for (const auto &d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d;
  }
  return out;
}

}  // namespace

ManifestError::ManifestError(Errc code, std::vector<std::string> diagnostics)
    : Error(code, join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace clineval
