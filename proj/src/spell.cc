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
#include <fstream>

#include "aggrid/error.h"
#include "aggrid/preprocess.h"
#include "aggrid/text_util.h"

namespace aggrid {

void SpellDictionary::add(const std::string& token, std::uint64_t count) {
  if (token.empty() || count == 0) return;
  counts_[token] += count;
  std::u32string merged = alphabet_;
  for (char32_t cp : utf8_decode(token)) {
    if (!std::binary_search(alphabet_.begin(), alphabet_.end(), cp)) {
      merged.push_back(cp);
    }
  }
  if (merged.size() != alphabet_.size()) {
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    alphabet_ = std::move(merged);
  }
}

std::uint64_t SpellDictionary::count(const std::string& token) const {
  const auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>>
SpellDictionary::sorted_entries() const {
  std::vector<std::pair<std::string, std::uint64_t>> entries(counts_.begin(),
                                                              counts_.end());
  std::sort(entries.begin(), entries.end());
  return entries;
}

SpellDictionary load_spell_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open spell dictionary " + path.string());
  SpellDictionary dict;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    const std::string at = " at line " + std::to_string(line_no) + " of " + path.string();
    if (fields.size() != 2 || fields[0].empty()) {
      throw ResourceError("malformed spell dictionary entry" + at);
    }
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      count = std::stoull(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ResourceError("invalid count '" + fields[1] + "'" + at);
    }
    if (count == 0) throw ResourceError("zero count" + at);
    dict.add(unescape_field(fields[0]), count);
  }
  return dict;
}

void save_spell_dictionary(const SpellDictionary& dict,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write " + path.string());
  for (const auto& [token, count] : dict.sorted_entries()) {
    out << escape_field(token) << '\t' << count << '\n';
  }
  if (!out) throw ResourceError("write failed for " + path.string());
}

std::size_t edit_distance(std::string_view a_utf8, std::string_view b_utf8) {
  const std::u32string a = utf8_decode(a_utf8);
  const std::u32string b = utf8_decode(b_utf8);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[n][m];
}

// Enumerates the distance-one neighbourhood over the dictionary alphabet
// rather than scanning every entry.
std::string correct_token(const std::string& token, const SpellDictionary& dict) {
  if (dict.contains(token)) return token;
  const std::u32string w = utf8_decode(token);
  const std::u32string& alphabet = dict.alphabet();
  std::string best;
  std::uint64_t best_count = 0;
  const auto consider = [&](const std::u32string& cand) {
    const std::string s = utf8_encode(cand);
    const std::uint64_t c = dict.count(s);
    if (c == 0) return;
    if (c > best_count || (c == best_count && s < best)) {
      best = s;
      best_count = c;
    }
  };
  std::u32string cand;
  for (std::size_t i = 0; i < w.size(); ++i) {
    cand = w;
    cand.erase(i, 1);
    consider(cand);
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == w[i + 1]) continue;
    cand = w;
    std::swap(cand[i], cand[i + 1]);
    consider(cand);
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (char32_t c : alphabet) {
      if (c == w[i]) continue;
      cand = w;
      cand[i] = c;
      consider(cand);
    }
  }
  for (std::size_t i = 0; i <= w.size(); ++i) {
    for (char32_t c : alphabet) {
      cand = w;
      cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(i), c);
      consider(cand);
    }
  }
  return best_count > 0 ? best : token;
}

std::vector<std::string> spell_correct(std::span<const std::string> tokens,
                                       const SpellDictionary& dict) {
  SpellCorrector corrector(dict);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(corrector.correct(t));
  return out;
}

const std::string& SpellCorrector::correct(const std::string& token) {
  auto it = memo_.find(token);
  if (it == memo_.end()) {
    it = memo_.emplace(token, correct_token(token, dict_)).first;
  }
  return it->second;
}

std::string SpellCorrector::correct_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const std::u32string cps = utf8_decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_unicode_space(cps[i])) {
      utf8_append(out, cps[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !is_unicode_space(cps[j])) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_punct(cps[b])) ++b;
    while (e > b && is_punct(cps[e - 1])) --e;
    const bool has_letter =
        std::any_of(cps.begin() + b, cps.begin() + e, [](char32_t c) { return is_letter(c); });
    out += utf8_encode(std::u32string_view(cps).substr(i, b - i));
    const std::string core = utf8_encode(std::u32string_view(cps).substr(b, e - b));
    out += has_letter ? correct(core) : core;
    out += utf8_encode(std::u32string_view(cps).substr(e, j - e));
    i = j;
  }
  return out;
}

}  // namespace aggrid
