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

#include "clineval/align.hpp"

#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "clineval/phon.hpp"

namespace clineval {

namespace {

bool is_punct(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

std::string fold_case(std::string_view text) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u.foldCase();
  std::string out;
  u.toUTF8String(out);
  return out;
}

ErrorRate rate(std::size_t distance, std::size_t ref_len) {
  return {static_cast<double>(distance) / static_cast<double>(ref_len), distance,
          ref_len};
}

}  // namespace

std::vector<std::string> normalize_words(std::string_view text,
                                         const TextNormalization &opts) {
  const std::string folded = opts.case_fold ? fold_case(text) : std::string(text);
  std::vector<std::string> words;
  std::u32string word;
  auto flush = [&] {
    std::u32string_view w(word);
    if (opts.strip_punctuation) {
      while (!w.empty() && is_punct(w.front())) w.remove_prefix(1);
      while (!w.empty() && is_punct(w.back())) w.remove_suffix(1);
    }
    if (!w.empty()) words.push_back(u32_to_utf8(w));
    word.clear();
  };
  for (char32_t cp : utf8_to_u32(folded)) {
    if (u_isUWhiteSpace(static_cast<UChar32>(cp)))
      flush();
    else
      word.push_back(cp);
  }
  flush();
  return words;
}

ErrorRate wer(std::string_view ref_text, std::string_view hyp_text,
              const TextNormalization &opts, std::size_t max_len) {
  const auto ref = normalize_words(ref_text, opts);
  if (ref.empty())
    throw Error(Errc::kEmptyReference, "wer: reference has no words");
  const auto hyp = normalize_words(hyp_text, opts);
  const auto script = levenshtein<std::string>(ref, hyp, std::equal_to<>{}, max_len);
  return rate(script.distance, ref.size());
}

ErrorRate cer(std::string_view ref_text, std::string_view hyp_text,
              const TextNormalization &opts, std::size_t max_len) {
  auto join = [&](std::string_view text) {
    std::u32string out;
    for (const auto &w : normalize_words(text, opts)) {
      if (!out.empty()) out.push_back(U' ');
      out += utf8_to_u32(w);
    }
    return out;
  };
  const std::u32string ref = join(ref_text);
  if (ref.empty())
    throw Error(Errc::kEmptyReference, "cer: reference has no characters");
  const std::u32string hyp = join(hyp_text);
  const auto script = levenshtein<char32_t>(ref, hyp, std::equal_to<>{}, max_len);
  return rate(script.distance, ref.size());
}

}  // namespace clineval
