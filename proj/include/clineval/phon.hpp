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

// IPA string handling: normalization, tokenization into base + diacritic
// tokens, and consonant extraction. All strings are UTF-8.

#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clineval {

enum class PhoneClass { kConsonant, kVowel, kUnknown };

struct IpaToken {
  /// One base character, or two characters joined by a tie bar (the tie bar
  /// is part of the base, e.g. "t͡ʃ").
  std::string base;
  /// Combining marks and modifier letters in input order.
  std::vector<std::string> diacritics;
  PhoneClass phone_class = PhoneClass::kUnknown;

  bool is_consonant() const { return phone_class == PhoneClass::kConsonant; }
  /// base followed by diacritics, NFC-composed.
  std::string spelling() const;

  friend bool operator==(const IpaToken &, const IpaToken &) = default;
};

struct IpaSequence {
  std::vector<IpaToken> tokens;
  std::string raw;

  std::size_t unknown_count() const;
  /// Token spellings separated by single spaces.
  std::string joined() const;
};

/// Set of base characters treated as consonants. A tie-barred pair counts as
/// a consonant when both halves are in the set.
class ConsonantInventory {
 public:
  /// Built-in inventory, identical to data/consonants.txt.
  static const ConsonantInventory &standard();
  /// One base per line; blank lines and lines starting with '#' are skipped.
  static ConsonantInventory load(const std::filesystem::path &path);
  static ConsonantInventory from_lines(std::string_view text);

  bool contains(std::string_view base) const;
  std::size_t size() const { return bases_.size(); }

 private:
  std::set<std::string, std::less<>> bases_;
};

/// NFC; strips / [ ] delimiters, stress marks, length marks and syllable
/// dots; collapses whitespace runs to a single space and trims the ends.
std::string normalize_ipa(std::string_view text);

/// Splits normalized text into tokens. Combining marks and IPA modifier
/// letters attach to the preceding base; tie bars fuse two bases. Whitespace
/// separates tokens without producing one. Throws Error(kLeadingCombining)
/// carrying the byte offset when a mark has nothing to attach to.
IpaSequence tokenize_ipa(std::string_view text,
                         const ConsonantInventory &inventory =
                             ConsonantInventory::standard());

/// Consonant tokens of `seq` in order, diacritics kept.
IpaSequence extract_consonants(const IpaSequence &seq);

/// Decodes UTF-8 into code points. Throws kInvalidArgument on malformed input.
std::u32string utf8_to_u32(std::string_view text);
std::string u32_to_utf8(std::u32string_view text);

}  // namespace clineval
