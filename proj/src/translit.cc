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

#include <algorithm>
#include <array>

#include "aggrid/preprocess.h"
#include "aggrid/text_util.h"

namespace aggrid {
namespace {

using TC = TranslitClass;

// Sorted by code point.
constexpr std::array<TranslitEntry, 112> kTable = {{
    {0x0900, "n", TC::kModifier},   // inverted candrabindu
    {0x0901, "n", TC::kModifier},   // candrabindu
    {0x0902, "n", TC::kModifier},   // anusvara
    {0x0903, "h", TC::kModifier},   // visarga
    {0x0904, "a", TC::kVowel},
    {0x0905, "a", TC::kVowel},
    {0x0906, "aa", TC::kVowel},
    {0x0907, "i", TC::kVowel},
    {0x0908, "ii", TC::kVowel},
    {0x0909, "u", TC::kVowel},
    {0x090A, "uu", TC::kVowel},
    {0x090B, "ri", TC::kVowel},
    {0x090C, "lri", TC::kVowel},
    {0x090D, "e", TC::kVowel},
    {0x090E, "e", TC::kVowel},
    {0x090F, "e", TC::kVowel},
    {0x0910, "ai", TC::kVowel},
    {0x0911, "o", TC::kVowel},
    {0x0912, "o", TC::kVowel},
    {0x0913, "o", TC::kVowel},
    {0x0914, "au", TC::kVowel},
    {0x0915, "k", TC::kConsonant},
    {0x0916, "kh", TC::kConsonant},
    {0x0917, "g", TC::kConsonant},
    {0x0918, "gh", TC::kConsonant},
    {0x0919, "ng", TC::kConsonant},
    {0x091A, "ch", TC::kConsonant},
    {0x091B, "chh", TC::kConsonant},
    {0x091C, "j", TC::kConsonant},
    {0x091D, "jh", TC::kConsonant},
    {0x091E, "ny", TC::kConsonant},
    {0x091F, "t", TC::kConsonant},
    {0x0920, "th", TC::kConsonant},
    {0x0921, "d", TC::kConsonant},
    {0x0922, "dh", TC::kConsonant},
    {0x0923, "n", TC::kConsonant},
    {0x0924, "t", TC::kConsonant},
    {0x0925, "th", TC::kConsonant},
    {0x0926, "d", TC::kConsonant},
    {0x0927, "dh", TC::kConsonant},
    {0x0928, "n", TC::kConsonant},
    {0x0929, "n", TC::kConsonant},
    {0x092A, "p", TC::kConsonant},
    {0x092B, "ph", TC::kConsonant},
    {0x092C, "b", TC::kConsonant},
    {0x092D, "bh", TC::kConsonant},
    {0x092E, "m", TC::kConsonant},
    {0x092F, "y", TC::kConsonant},
    {0x0930, "r", TC::kConsonant},
    {0x0931, "r", TC::kConsonant},
    {0x0932, "l", TC::kConsonant},
    {0x0933, "l", TC::kConsonant},
    {0x0934, "zh", TC::kConsonant},
    {0x0935, "v", TC::kConsonant},
    {0x0936, "sh", TC::kConsonant},
    {0x0937, "sh", TC::kConsonant},
    {0x0938, "s", TC::kConsonant},
    {0x0939, "h", TC::kConsonant},
    {0x093C, "", TC::kNukta},
    {0x093D, "'", TC::kPunct},      // avagraha
    {0x093E, "aa", TC::kVowelSign},
    {0x093F, "i", TC::kVowelSign},
    {0x0940, "ii", TC::kVowelSign},
    {0x0941, "u", TC::kVowelSign},
    {0x0942, "uu", TC::kVowelSign},
    {0x0943, "ri", TC::kVowelSign},
    {0x0944, "rii", TC::kVowelSign},
    {0x0945, "e", TC::kVowelSign},
    {0x0946, "e", TC::kVowelSign},
    {0x0947, "e", TC::kVowelSign},
    {0x0948, "ai", TC::kVowelSign},
    {0x0949, "o", TC::kVowelSign},
    {0x094A, "o", TC::kVowelSign},
    {0x094B, "o", TC::kVowelSign},
    {0x094C, "au", TC::kVowelSign},
    {0x094D, "", TC::kVirama},
    {0x0950, "om", TC::kVowel},
    {0x0951, "", TC::kSilent},      // stress signs
    {0x0952, "", TC::kSilent},
    {0x0953, "", TC::kSilent},
    {0x0954, "", TC::kSilent},
    {0x0958, "q", TC::kConsonant},
    {0x0959, "kh", TC::kConsonant},
    {0x095A, "g", TC::kConsonant},
    {0x095B, "z", TC::kConsonant},
    {0x095C, "r", TC::kConsonant},
    {0x095D, "rh", TC::kConsonant},
    {0x095E, "f", TC::kConsonant},
    {0x095F, "y", TC::kConsonant},
    {0x0960, "rii", TC::kVowel},
    {0x0961, "lrii", TC::kVowel},
    {0x0962, "lri", TC::kVowelSign},
    {0x0963, "lrii", TC::kVowelSign},
    {0x0964, ".", TC::kPunct},      // danda
    {0x0965, ".", TC::kPunct},      // double danda
    {0x0966, "0", TC::kDigit},
    {0x0967, "1", TC::kDigit},
    {0x0968, "2", TC::kDigit},
    {0x0969, "3", TC::kDigit},
    {0x096A, "4", TC::kDigit},
    {0x096B, "5", TC::kDigit},
    {0x096C, "6", TC::kDigit},
    {0x096D, "7", TC::kDigit},
    {0x096E, "8", TC::kDigit},
    {0x096F, "9", TC::kDigit},
    {0x0970, ".", TC::kPunct},      // abbreviation sign
    {0x0971, "", TC::kSilent},
    {0x0972, "a", TC::kVowel},
    {0x097B, "g", TC::kConsonant},
    {0x097C, "j", TC::kConsonant},
    {0x097E, "d", TC::kConsonant},
    {0x097F, "b", TC::kConsonant},
}};

const TranslitEntry* lookup(char32_t cp) {
  const auto it = std::lower_bound(
      kTable.begin(), kTable.end(), cp,
      [](const TranslitEntry& e, char32_t c) { return e.codepoint < c; });
  if (it == kTable.end() || it->codepoint != cp) return nullptr;
  return &*it;
}

bool is_devanagari(char32_t cp) { return cp >= 0x0900 && cp <= 0x097F; }

// Letters of scripts other than Latin and Devanagari, by block.
bool is_other_script_letter(char32_t cp) {
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  return (cp >= 0x0370 && cp <= 0x08FF) ||   // Greek .. Arabic Extended
         (cp >= 0x0980 && cp <= 0x0DFF) ||   // other Indic scripts
         (cp >= 0x0E00 && cp <= 0x0FFF) ||   // Thai, Lao, Tibetan
         (cp >= 0x1000 && cp <= 0x109F) ||   // Myanmar
         (cp >= 0x10A0 && cp <= 0x10FF) ||   // Georgian
         (cp >= 0x1100 && cp <= 0x11FF) ||   // Hangul Jamo
         (cp >= 0x1E00 && cp <= 0x1FFF) ||   // Latin/Greek extended
         (cp >= 0x3040 && cp <= 0x30FF) ||   // Kana
         (cp >= 0x4E00 && cp <= 0x9FFF) ||   // CJK
         (cp >= 0xAC00 && cp <= 0xD7AF);     // Hangul
}

}  // namespace

ScriptProfile script_profile(std::string_view text) {
  std::size_t deva = 0;
  std::size_t latin = 0;
  std::size_t other = 0;
  for (char32_t cp : utf8_decode(text)) {
    if (is_devanagari(cp)) {
      const TranslitEntry* e = lookup(cp);
      // Digits and punctuation in the block carry no script signal.
      if (e != nullptr && (e->kind == TC::kDigit || e->kind == TC::kPunct)) continue;
      ++deva;
    } else if (is_ascii_letter(cp)) {
      ++latin;
    } else if (is_other_script_letter(cp)) {
      ++other;
    }
  }
  ScriptProfile p;
  p.script_chars = deva + latin + other;
  if (p.script_chars == 0) return p;
  const double total = static_cast<double>(p.script_chars);
  p.devanagari_fraction = static_cast<double>(deva) / total;
  p.latin_fraction = static_cast<double>(latin) / total;
  p.other_fraction = static_cast<double>(other) / total;
  return p;
}

std::span<const TranslitEntry> translit_table() { return kTable; }

std::string_view translit_class_name(TranslitClass kind) {
  switch (kind) {
    case TC::kVowel: return "vowel";
    case TC::kConsonant: return "consonant";
    case TC::kVowelSign: return "vowel_sign";
    case TC::kModifier: return "modifier";
    case TC::kVirama: return "virama";
    case TC::kNukta: return "nukta";
    case TC::kDigit: return "digit";
    case TC::kPunct: return "punct";
    case TC::kSilent: return "silent";
  }
  return "?";
}

Romanized romanize_devanagari(std::string_view text) {
  Romanized result;
  const std::u32string cps = utf8_decode(text);
  std::string& out = result.text;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t cp = cps[i];
    if (!is_devanagari(cp)) {
      utf8_append(out, cp);
      ++i;
      continue;
    }
    const TranslitEntry* e = lookup(cp);
    if (e == nullptr) {
      utf8_append(out, cp);
      ++result.unknown_codepoints;
      ++i;
      continue;
    }
    ++i;
    if (e->kind != TC::kConsonant) {
      // Stray signs, nukta and virama contribute their own value (possibly
      // empty) outside of a consonant cluster.
      out += e->roman;
      continue;
    }
    out += e->roman;
    while (i < cps.size() && cps[i] == 0x093C) ++i;  // nukta
    const TranslitEntry* next = i < cps.size() ? lookup(cps[i]) : nullptr;
    if (next != nullptr && next->kind == TC::kVowelSign) {
      out += next->roman;
      ++i;
    } else if (next != nullptr && next->kind == TC::kVirama) {
      ++i;
    } else {
      out.push_back('a');
    }
  }
  return result;
}

std::string transliterate_devanagari(std::string_view text) {
  return romanize_devanagari(text).text;
}

}  // namespace aggrid
