/* Copyright 2026 The aggrid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef AGGRID_PREPROCESS_H_
#define AGGRID_PREPROCESS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aggrid {

// ---------------------------------------------------------------------------
// Cleaning and minor stemming.

struct CleanConfig {
  bool lowercase = true;
  bool strip_urls = true;
  bool strip_emails = true;
  bool strip_numbers = true;
  bool minor_stemming = true;
  // Whole-token rewrites, keys are lowercase single tokens. Values may hold
  // several space-separated words.
  std::map<std::string, std::string> expansions;

  static CleanConfig english();
  static CleanConfig hindi();
};

// Informal contractions and abbreviations rewritten to their formal forms.
const std::map<std::string, std::string>& default_expansions();
// Tokens whose trailing `s` is never stripped.
bool is_stem_exception(std::string_view token);

// Strips `'s`, then `s`, then `ing` until none applies. A suffix is removed
// only when what remains ends in an ASCII letter; `s` needs a stem of at least
// three letters not ending in s/u/i, `ing` a stem of at least four.
std::string stem_token(std::string_view token);

// Lowercase, URL/email/standalone-number removal, expansion rewrites and
// minor stemming on each whitespace token (leading/trailing punctuation is
// peeled off first), then whitespace collapse and trim. Idempotent.
std::string clean_text(std::string_view text, const CleanConfig& config);

// ---------------------------------------------------------------------------
// Script detection.

struct ScriptProfile {
  double devanagari_fraction = 0.0;
  double latin_fraction = 0.0;
  double other_fraction = 0.0;
  std::size_t script_chars = 0;
};

ScriptProfile script_profile(std::string_view text);

// ---------------------------------------------------------------------------
// Devanagari to Roman transliteration.

enum class TranslitClass {
  kVowel,
  kConsonant,
  kVowelSign,
  kModifier,
  kVirama,
  kNukta,
  kDigit,
  kPunct,
  kSilent,
};

struct TranslitEntry {
  char32_t codepoint;
  std::string_view roman;
  TranslitClass kind;
};

inline constexpr std::string_view kTranslitTableVersion = "devanagari-roman-1";

std::span<const TranslitEntry> translit_table();
std::string_view translit_class_name(TranslitClass kind);

struct Romanized {
  std::string text;
  // Devanagari-block code points outside the table, passed through as-is.
  std::size_t unknown_codepoints = 0;
};

Romanized romanize_devanagari(std::string_view text);
std::string transliterate_devanagari(std::string_view text);

// ---------------------------------------------------------------------------
// Dictionary spell correction.

class SpellDictionary {
 public:
  SpellDictionary() = default;

  // Adds `count` occurrences; tokens are stored as given (callers lowercase).
  void add(const std::string& token, std::uint64_t count = 1);
  std::uint64_t count(const std::string& token) const;
  bool contains(const std::string& token) const { return count(token) > 0; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  // Entries sorted by token.
  std::vector<std::pair<std::string, std::uint64_t>> sorted_entries() const;
  // Sorted, unique code points over all tokens.
  const std::u32string& alphabet() const { return alphabet_; }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::u32string alphabet_;
};

// `token<TAB>count` lines. Counts must be integers >= 1.
SpellDictionary load_spell_dictionary(const std::filesystem::path& path);
void save_spell_dictionary(const SpellDictionary& dict,
                           const std::filesystem::path& path);

// Optimal string alignment distance over code points: insertions, deletions,
// substitutions and adjacent transpositions each cost one.
std::size_t edit_distance(std::string_view a, std::string_view b);

// Keeps in-dictionary tokens; otherwise picks the most frequent entry at
// distance one (ties to the lexicographically smallest) or leaves the token.
std::string correct_token(const std::string& token, const SpellDictionary& dict);
std::vector<std::string> spell_correct(std::span<const std::string> tokens,
                                       const SpellDictionary& dict);

// Corrects the word core of every whitespace token that contains a letter,
// leaving punctuation and spacing in place.
class SpellCorrector {
 public:
  explicit SpellCorrector(const SpellDictionary& dict) : dict_(dict) {}
  const std::string& correct(const std::string& token);
  std::string correct_text(std::string_view text);

 private:
  const SpellDictionary& dict_;
  std::unordered_map<std::string, std::string> memo_;
};

}  // namespace aggrid

#endif  // AGGRID_PREPROCESS_H_
