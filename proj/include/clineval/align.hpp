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

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clineval/error.hpp"

namespace clineval {

enum class EditKind { kMatch, kSub, kIns, kDel };

template <typename T>
struct EditOp {
  EditKind kind;
  std::optional<T> ref_item;  // empty for kIns
  std::optional<T> hyp_item;  // empty for kDel
};

struct EditCounts {
  std::size_t matches = 0;
  std::size_t subs = 0;
  std::size_t ins = 0;
  std::size_t del = 0;
};

template <typename T>
struct EditScript {
  std::vector<EditOp<T>> ops;
  std::size_t distance = 0;
  EditCounts counts;
};

inline constexpr std::size_t kDefaultMaxSequenceLength = 10000;

/// Unit-cost Levenshtein alignment of `ref` onto `hyp`.
///
/// The backtrace walks from the end and prefers, among optimal moves, the
/// diagonal (match or substitution), then deletion, then insertion, so the
/// returned script is deterministic. Throws kSequenceTooLong when either side
/// exceeds `max_len`.
template <typename T, typename Eq = std::equal_to<>>
EditScript<T> levenshtein(std::span<const T> ref, std::span<const T> hyp,
                          Eq eq = {},
                          std::size_t max_len = kDefaultMaxSequenceLength) {
  if (ref.size() > max_len || hyp.size() > max_len)
    throw Error(Errc::kSequenceTooLong,
                "levenshtein: sequence length " +
                    std::to_string(std::max(ref.size(), hyp.size())) +
                    " exceeds limit " + std::to_string(max_len));

  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t stride = m + 1;
  std::vector<std::size_t> cost((n + 1) * stride);
  for (std::size_t i = 0; i <= n; ++i) cost[i * stride] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag =
          cost[(i - 1) * stride + j - 1] + (eq(ref[i - 1], hyp[j - 1]) ? 0 : 1);
      const std::size_t up = cost[(i - 1) * stride + j] + 1;
      const std::size_t left = cost[i * stride + j - 1] + 1;
      cost[i * stride + j] = std::min({diag, up, left});
    }
  }

  EditScript<T> script;
  script.distance = cost[n * stride + m];
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = cost[i * stride + j];
    if (i > 0 && j > 0) {
      const bool same = eq(ref[i - 1], hyp[j - 1]);
      if (cost[(i - 1) * stride + j - 1] + (same ? 0 : 1) == here) {
        script.ops.push_back({same ? EditKind::kMatch : EditKind::kSub,
                              ref[i - 1], hyp[j - 1]});
        if (same) ++script.counts.matches; else ++script.counts.subs;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[(i - 1) * stride + j] + 1 == here) {
      script.ops.push_back({EditKind::kDel, ref[i - 1], std::nullopt});
      ++script.counts.del;
      --i;
      continue;
    }
    script.ops.push_back({EditKind::kIns, std::nullopt, hyp[j - 1]});
    ++script.counts.ins;
    --j;
  }
  std::reverse(script.ops.begin(), script.ops.end());
  return script;
}

/// Replays `script` on its reference side and returns the hypothesis it
/// produces. Throws kInvalidArgument when the script does not fit `ref`.
template <typename T>
std::vector<T> apply_edit_script(std::span<const T> ref, const EditScript<T> &script) {
  std::vector<T> out;
  std::size_t pos = 0;
  for (const auto &op : script.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSub:
        if (pos >= ref.size())
          throw Error(Errc::kInvalidArgument, "edit script overruns reference");
        out.push_back(*op.hyp_item);
        ++pos;
        break;
      case EditKind::kDel:
        if (pos >= ref.size())
          throw Error(Errc::kInvalidArgument, "edit script overruns reference");
        ++pos;
        break;
      case EditKind::kIns:
        out.push_back(*op.hyp_item);
        break;
    }
  }
  if (pos != ref.size())
    throw Error(Errc::kInvalidArgument, "edit script does not consume reference");
  return out;
}

/// Text clean-up applied before WER/CER.
struct TextNormalization {
  bool case_fold = true;
  /// Strip leading and trailing punctuation from every word.
  bool strip_punctuation = true;
};

struct ErrorRate {
  double value = 0.0;
  std::size_t numerator = 0;    // edit distance
  std::size_t denominator = 0;  // reference length
};

/// Words of `text` after case folding and punctuation stripping. Words left
/// empty by stripping are dropped.
std::vector<std::string> normalize_words(std::string_view text,
                                         const TextNormalization &opts = {});

/// Word error rate. Throws kEmptyReference when the reference has no words.
ErrorRate wer(std::string_view ref_text, std::string_view hyp_text,
              const TextNormalization &opts = {},
              std::size_t max_len = kDefaultMaxSequenceLength);

/// Character error rate over the code points of the normalized texts, with
/// words joined by single spaces. Throws kEmptyReference as wer() does.
ErrorRate cer(std::string_view ref_text, std::string_view hyp_text,
              const TextNormalization &opts = {},
              std::size_t max_len = kDefaultMaxSequenceLength);

}  // namespace clineval
