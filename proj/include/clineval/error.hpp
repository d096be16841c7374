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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clineval {

/// Every failure the library can report. Callers branch on the code; the
/// message is for humans.
enum class Errc {
  // audio
  kMissingFile,
  kUnsupportedFormat,
  kTruncated,
  kEmptyPayload,
  kCorruptData,
  kTooShort,
  // generic argument validation
  kInvalidArgument,
  // phon
  kLeadingCombining,
  // align
  kEmptyReference,
  kSequenceTooLong,
  // stats
  kUnvoicedClip,
  kUndefinedPcc,
  kLengthMismatch,
  kZeroNorm,
  kInsufficientData,
  kZeroVariance,
  // harness
  kSchema,
  kDanglingReference,
  kNoMetricInputs,
  kInsufficientOverlap,
  kIo,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by manifest loading; carries every diagnostic found, not just the
/// first one.
class ManifestError : public Error {
 public:
  ManifestError(Errc code, std::vector<std::string> diagnostics);

  const std::vector<std::string> &diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace clineval
