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

constexpr int kMaxRewriteDepth = 8;

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Removes every `http://`, `https://` or `www.` occurrence up to the next
// ASCII whitespace.
std::string remove_urls(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (starts_with_ci(s, i, "http://") || starts_with_ci(s, i, "https://") ||
        starts_with_ci(s, i, "www.")) {
      while (i < s.size() && !is_ascii_space(s[i])) ++i;
      out.push_back(' ');
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

bool is_local_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '%' ||
         c == '+' || c == '-';
}

bool is_domain_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '.' || c == '-';
}

// Domain must contain a dot and end in a label of two or more letters once
// trailing dots and hyphens are ignored.
bool valid_domain(std::string_view domain) {
  while (!domain.empty() && (domain.back() == '.' || domain.back() == '-')) {
    domain.remove_suffix(1);
  }
  const std::size_t dot = domain.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return false;
  const std::string_view tld = domain.substr(dot + 1);
  if (tld.size() < 2) return false;
  return std::all_of(tld.begin(), tld.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

std::string remove_emails(std::string_view s) {
  std::string out(s);
  std::size_t at = out.find('@');
  while (at != std::string::npos) {
    std::size_t left = at;
    while (left > 0 && is_local_char(out[left - 1])) --left;
    std::size_t right = at + 1;
    while (right < out.size() && is_domain_char(out[right])) ++right;
    if (left < at && valid_domain(std::string_view(out).substr(at + 1, right - at - 1))) {
      out.replace(left, right - left, " ");
      at = out.find('@', left + 1);
    } else {
      at = out.find('@', at + 1);
    }
  }
  return out;
}

// A digit run is standalone when neither neighbour is a letter or digit.
std::string remove_numbers(std::string_view text) {
  const std::u32string cps = utf8_decode(text);
  std::u32string out;
  out.reserve(cps.size());
  std::size_t i = 0;
  const auto is_word = [](char32_t c) { return is_letter(c) || is_ascii_digit(c); };
  while (i < cps.size()) {
    if (!is_ascii_digit(cps[i])) {
      out.push_back(cps[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && is_ascii_digit(cps[j])) ++j;
    const bool left_ok = i == 0 || !is_word(cps[i - 1]);
    const bool right_ok = j == cps.size() || !is_word(cps[j]);
    if (left_ok && right_ok) {
      out.push_back(U' ');
    } else {
      out.append(cps, i, j - i);
    }
    i = j;
  }
  return utf8_encode(out);
}

std::vector<std::u32string> split_whitespace(const std::u32string& cps) {
  std::vector<std::u32string> tokens;
  std::u32string cur;
  for (char32_t c : cps) {
    if (is_unicode_space(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool ends_with(const std::u32string& s, std::u32string_view suffix) {
  return s.size() >= suffix.size() &&
         std::u32string_view(s).substr(s.size() - suffix.size()) == suffix;
}

void rewrite_core(const std::string& core, const CleanConfig& config, int depth,
                  std::vector<std::string>& words) {
  if (depth < kMaxRewriteDepth) {
    const auto it = config.expansions.find(core);
    if (it != config.expansions.end()) {
      for (const auto& w : split(it->second, ' ')) {
        if (!w.empty()) rewrite_core(w, config, depth + 1, words);
      }
      return;
    }
  }
  if (config.minor_stemming) {
    std::string stemmed = stem_token(core);
    if (stemmed != core && depth < kMaxRewriteDepth &&
        config.expansions.count(stemmed) > 0) {
      rewrite_core(stemmed, config, depth + 1, words);
      return;
    }
    words.push_back(std::move(stemmed));
    return;
  }
  words.push_back(core);
}

}  // namespace

const std::map<std::string, std::string>& default_expansions() {
  static const std::map<std::string, std::string> kExpansions = {
      {"u", "you"},          {"r", "are"},          {"ur", "your"},
      {"pls", "please"},     {"plz", "please"},     {"thx", "thanks"},
      {"im", "i am"},        {"i'm", "i am"},       {"dont", "do not"},
      {"don't", "do not"},   {"cant", "can not"},   {"can't", "can not"},
      {"won't", "will not"}, {"isn't", "is not"},   {"doesn't", "does not"},
      {"didn't", "did not"}, {"ain't", "is not"},   {"it's", "it is"},
      {"that's", "that is"}, {"you're", "you are"}, {"they're", "they are"},
      {"i've", "i have"},    {"i'll", "i will"},    {"gonna", "going to"},
      {"wanna", "want to"},
  };
  return kExpansions;
}

bool is_stem_exception(std::string_view token) {
  static constexpr std::array<std::string_view, 20> kExceptions = {
      "always", "as",   "bias",  "does",    "has",    "his",   "is",
      "its",    "lens", "news",  "perhaps", "plus",   "series", "species",
      "this",   "thus", "us",    "was",     "whereas", "yes"};
  return std::find(kExceptions.begin(), kExceptions.end(), token) !=
         kExceptions.end();
}

CleanConfig CleanConfig::english() {
  CleanConfig c;
  c.expansions = default_expansions();
  return c;
}

CleanConfig CleanConfig::hindi() {
  CleanConfig c;
  c.minor_stemming = false;
  return c;
}

std::string stem_token(std::string_view token) {
  std::u32string w = utf8_decode(token);
  const auto stem_ok = [](const std::u32string& s, std::size_t cut) {
    return cut > 0 && is_ascii_letter(s[cut - 1]);
  };
  while (true) {
    bool changed = false;
    if (ends_with(w, U"'s") || ends_with(w, U"’s")) {
      const std::size_t cut = w.size() - 2;
      if (stem_ok(w, cut)) {
        w.resize(cut);
        changed = true;
      }
    }
    if (ends_with(w, U"s") && !is_stem_exception(utf8_encode(w))) {
      const std::size_t cut = w.size() - 1;
      if (cut >= 3 && stem_ok(w, cut) && w[cut - 1] != U's' &&
          w[cut - 1] != U'u' && w[cut - 1] != U'i') {
        w.resize(cut);
        changed = true;
      }
    }
    if (ends_with(w, U"ing")) {
      const std::size_t cut = w.size() - 3;
      if (cut >= 4 && stem_ok(w, cut)) {
        w.resize(cut);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return utf8_encode(w);
}

namespace {

std::string clean_pass(std::string_view text, const CleanConfig& config) {
  std::string s = config.lowercase ? ascii_lower(text) : std::string(text);
  if (config.strip_urls) s = remove_urls(s);
  if (config.strip_emails) s = remove_emails(s);
  if (config.strip_numbers) s = remove_numbers(s);

  const bool rewrite = config.minor_stemming || !config.expansions.empty();
  std::string out;
  out.reserve(s.size());
  for (const auto& tok : split_whitespace(utf8_decode(s))) {
    if (!out.empty()) out.push_back(' ');
    if (!rewrite) {
      out += utf8_encode(tok);
      continue;
    }
    std::size_t b = 0;
    std::size_t e = tok.size();
    while (b < e && is_punct(tok[b])) ++b;
    while (e > b && is_punct(tok[e - 1])) --e;
    if (b == e) {
      out += utf8_encode(tok);
      continue;
    }
    std::vector<std::string> words;
    rewrite_core(utf8_encode(tok.substr(b, e - b)), config, 0, words);
    out += utf8_encode(tok.substr(0, b));
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += words[i];
    }
    out += utf8_encode(tok.substr(e));
  }
  // Expansions may yield empty words; collapse once more.
  std::string collapsed;
  collapsed.reserve(out.size());
  for (const auto& w : split(out, ' ')) {
    if (w.empty()) continue;
    if (!collapsed.empty()) collapsed.push_back(' ');
    collapsed += w;
  }
  return collapsed;
}

// Later steps can expose new matches for earlier ones (dropping a number can
// complete an email domain, stemming `wwws.` yields `www.`), so passes repeat
// until the text stops changing.
constexpr int kMaxCleanPasses = 8;

}  // namespace

std::string clean_text(std::string_view text, const CleanConfig& config) {
  std::string cur = clean_pass(text, config);
  for (int pass = 1; pass < kMaxCleanPasses; ++pass) {
    std::string next = clean_pass(cur, config);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace aggrid
