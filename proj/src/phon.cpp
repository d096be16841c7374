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

#include "clineval/phon.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>

#include "clineval/error.hpp"

namespace clineval {

// Generated from data/consonants.txt at configure time.
extern const char *const kStandardConsonantData;

namespace {

constexpr char32_t kTieAbove = U'͡';
constexpr char32_t kTieBelow = U'͜';

constexpr std::u32string_view kStrippedMarks =
    U"/[]"            // transcription delimiters
    U"ˈˌ"   // primary and secondary stress
    U"ːˑ"   // long and half-long
    U".";             // syllable break

// Spacing modifier letters that behave like diacritics on the preceding base.
constexpr std::u32string_view kModifierLetters =
    U"ʰʱʲʷˠˤⁿˡʼ˞ˀᵊ";

constexpr std::u32string_view kVowels =
    U"iyɨʉɯuɪʏʊeøɘɵɤoəɛœɜɞʌɔæɐaɶɑɒɚɝᵻᵿɩɷ";

bool is_mark(char32_t cp) {
  const auto type = u_charType(static_cast<UChar32>(cp));
  return type == U_NON_SPACING_MARK || type == U_ENCLOSING_MARK ||
         type == U_COMBINING_SPACING_MARK;
}

bool is_modifier(char32_t cp) {
  return kModifierLetters.find(cp) != std::u32string_view::npos;
}

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_vowel(char32_t cp) { return kVowels.find(cp) != std::u32string_view::npos; }

const icu::Normalizer2 &nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr)
    throw Error(Errc::kInvalidArgument, "ICU NFC normalizer unavailable");
  return *n;
}

const icu::Normalizer2 &nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr)
    throw Error(Errc::kInvalidArgument, "ICU NFD normalizer unavailable");
  return *n;
}

std::string cp_to_utf8(char32_t cp) { return u32_to_utf8(std::u32string_view(&cp, 1)); }

// Code point plus its byte offset in the source string.
struct Scalar {
  char32_t cp;
  std::size_t offset;
};

std::vector<Scalar> decode_with_offsets(std::string_view text) {
  std::vector<Scalar> out;
  const auto *s = reinterpret_cast<const std::uint8_t *>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const auto start = static_cast<std::size_t>(i);
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0)
      throw Error(Errc::kInvalidArgument,
                  "invalid UTF-8 at byte offset " + std::to_string(start));
    out.push_back({static_cast<char32_t>(c), start});
  }
  return out;
}

PhoneClass classify(const IpaToken &token, const ConsonantInventory &inventory) {
  const std::u32string base = utf8_to_u32(token.base);
  const auto tie = std::find_if(base.begin(), base.end(), [](char32_t c) {
    return c == kTieAbove || c == kTieBelow;
  });
  if (tie != base.end()) {
    const std::u32string first(base.begin(), tie);
    const std::u32string second(tie + 1, base.end());
    if (!first.empty() && !second.empty() && inventory.contains(u32_to_utf8(first)) &&
        inventory.contains(u32_to_utf8(second)))
      return PhoneClass::kConsonant;
    return PhoneClass::kUnknown;
  }
  if (inventory.contains(token.base)) return PhoneClass::kConsonant;
  if (base.size() == 1 && is_vowel(base[0])) return PhoneClass::kVowel;
  return PhoneClass::kUnknown;
}

bool is_known_letter(char32_t cp, const ConsonantInventory &inventory) {
  return is_vowel(cp) || inventory.contains(cp_to_utf8(cp));
}

// Starts a token at `cp`. Precomposed letters that are not IPA letters
// themselves (e.g. "ñ") are split back into base + combining marks.
IpaToken start_token(char32_t cp, const ConsonantInventory &inventory) {
  IpaToken token;
  if (!is_known_letter(cp, inventory)) {
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString decomposed;
    nfd().normalize(icu::UnicodeString(static_cast<UChar32>(cp)), decomposed,
                    status);
    if (U_SUCCESS(status) && decomposed.countChar32() > 1) {
      const auto first = static_cast<char32_t>(decomposed.char32At(0));
      if (is_known_letter(first, inventory)) {
        token.base = cp_to_utf8(first);
        for (int32_t i = decomposed.moveIndex32(0, 1); i < decomposed.length();
             i = decomposed.moveIndex32(i, 1))
          token.diacritics.push_back(
              cp_to_utf8(static_cast<char32_t>(decomposed.char32At(i))));
        return token;
      }
    }
  }
  token.base = cp_to_utf8(cp);
  return token;
}

}  // namespace

std::u32string utf8_to_u32(std::string_view text) {
  std::u32string out;
  for (const auto &s : decode_with_offsets(text)) out.push_back(s.cp);
  return out;
}

std::string u32_to_utf8(std::u32string_view text) {
  std::string out;
  for (char32_t cp : text) {
    char buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(reinterpret_cast<std::uint8_t *>(buf), len, U8_MAX_LENGTH,
              static_cast<UChar32>(cp), error);
    if (error)
      throw Error(Errc::kInvalidArgument, "code point cannot be encoded as UTF-8");
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

std::string IpaToken::spelling() const {
  std::string joined = base;
  for (const auto &d : diacritics) joined += d;
  // Recompose letters that start_token split apart.
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString composed = nfc().normalize(
      icu::UnicodeString::fromUTF8(
          icu::StringPiece(joined.data(), static_cast<int32_t>(joined.size()))),
      status);
  if (U_FAILURE(status)) return joined;
  std::string out;
  composed.toUTF8String(out);
  return out;
}

std::size_t IpaSequence::unknown_count() const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const IpaToken &t) {
        return t.phone_class == PhoneClass::kUnknown;
      }));
}

std::string IpaSequence::joined() const {
  std::string out;
  for (const auto &t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.spelling();
  }
  return out;
}

const ConsonantInventory &ConsonantInventory::standard() {
  static const ConsonantInventory inventory = from_lines(kStandardConsonantData);
  return inventory;
}

ConsonantInventory ConsonantInventory::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kMissingFile, path.string() + ": cannot open inventory");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return from_lines(text);
}

ConsonantInventory ConsonantInventory::from_lines(std::string_view text) {
  ConsonantInventory inventory;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
      line.remove_prefix(1);
    if (!line.empty() && line.front() != '#')
      inventory.bases_.insert(normalize_ipa(line));
    pos = end + 1;
  }
  return inventory;
}

bool ConsonantInventory::contains(std::string_view base) const {
  return bases_.find(base) != bases_.end();
}

std::string normalize_ipa(std::string_view text) {
  // Strip before composing so the result is a fixed point: removing a mark
  // after NFC could leave a base and combining mark that compose further.
  std::u32string stripped;
  bool pending_space = false;
  for (char32_t cp : utf8_to_u32(text)) {
    if (kStrippedMarks.find(cp) != std::u32string_view::npos) continue;
    if (is_space(cp)) {
      pending_space = !stripped.empty();
      continue;
    }
    if (pending_space) stripped.push_back(U' ');
    pending_space = false;
    stripped.push_back(cp);
  }

  const std::string utf8 = u32_to_utf8(stripped);
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString composed = nfc().normalize(
      icu::UnicodeString::fromUTF8(
          icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size()))),
      status);
  if (U_FAILURE(status))
    throw Error(Errc::kInvalidArgument, "NFC normalization failed");
  std::string out;
  composed.toUTF8String(out);
  return out;
}

IpaSequence tokenize_ipa(std::string_view text, const ConsonantInventory &inventory) {
  IpaSequence seq;
  seq.raw = std::string(text);

  std::optional<IpaToken> current;
  bool pending_tie = false;
  auto flush = [&] {
    if (current) {
      current->phone_class = classify(*current, inventory);
      seq.tokens.push_back(std::move(*current));
      current.reset();
    }
    pending_tie = false;
  };

  for (const auto &[cp, offset] : decode_with_offsets(text)) {
    if (is_space(cp)) {
      flush();
      continue;
    }
    if (is_mark(cp) || is_modifier(cp)) {
      if (!current)
        throw Error(Errc::kLeadingCombining,
                    "combining character with no base at byte offset " +
                        std::to_string(offset));
      if (cp == kTieAbove || cp == kTieBelow) {
        current->base += cp_to_utf8(cp);
        pending_tie = true;
      } else {
        current->diacritics.push_back(cp_to_utf8(cp));
      }
      continue;
    }
    if (current && pending_tie) {
      current->base += cp_to_utf8(cp);
      pending_tie = false;
      continue;
    }
    flush();
    current = start_token(cp, inventory);
  }
  flush();
  return seq;
}

IpaSequence extract_consonants(const IpaSequence &seq) {
  IpaSequence out;
  std::copy_if(seq.tokens.begin(), seq.tokens.end(), std::back_inserter(out.tokens),
               [](const IpaToken &t) { return t.is_consonant(); });
  out.raw = out.joined();
  return out;
}

}  // namespace clineval
