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

#include "aggrid/lexfeatures.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "aggrid/error.h"
#include "aggrid/text_util.h"

namespace aggrid {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) parts.push_back(line.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::ifstream open_resource(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + std::string(what) + " " + path.string());
  return in;
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::string where(const std::filesystem::path& path, std::size_t line_no) {
  return " at line " + std::to_string(line_no) + " of " + path.string();
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

bool EmbeddingTable::add(const std::string& word, std::span<const float> vector) {
  if (vector.size() != dimension_) {
    throw DataError("embedding for '" + word + "' has " + std::to_string(vector.size()) +
                    " values, expected " + std::to_string(dimension_));
  }
  if (!rows_.emplace(word, words_.size()).second) return false;
  words_.push_back(word);
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::span<const float> EmbeddingTable::find(const std::string& word) const {
  const auto it = rows_.find(word);
  if (it == rows_.end()) return {};
  return std::span<const float>(data_).subspan(it->second * dimension_, dimension_);
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in = open_resource(path, "embeddings");
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) {
    throw ResourceError("malformed embedding header (empty file) in " + path.string());
  }
  const auto header = split_spaces(line);
  std::size_t vocab = 0;
  std::size_t dim = 0;
  const auto parse_count = [](std::string_view s, std::size_t& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  if (header.size() != 2 || !parse_count(header[0], vocab) ||
      !parse_count(header[1], dim) || dim == 0) {
    throw ResourceError("malformed embedding header '" + line + "' in " + path.string());
  }
  EmbeddingTable table(dim);
  std::vector<float> values(dim);
  while (next_line(in, line, line_no)) {
    if (trim(line).empty()) continue;
    const auto parts = split_spaces(line);
    if (parts.size() != dim + 1) {
      throw ResourceError("embedding row arity mismatch: expected " +
                          std::to_string(dim) + " values, found " +
                          std::to_string(parts.size() - 1) + where(path, line_no));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      const auto s = parts[k + 1];
      const auto res = std::from_chars(s.data(), s.data() + s.size(), values[k]);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size() ||
          !std::isfinite(values[k])) {
        throw ResourceError("invalid embedding value '" + std::string(s) + "'" +
                            where(path, line_no));
      }
    }
    const std::string word(parts[0]);
    if (!table.add(word, values)) {
      throw ResourceError("duplicate embedding word '" + word + "'" + where(path, line_no));
    }
  }
  if (table.size() != vocab) {
    throw ResourceError("embedding header declares " + std::to_string(vocab) +
                        " words but " + std::to_string(table.size()) +
                        " rows were read from " + path.string());
  }
  return table;
}

EmbeddingAverage embed_average(std::span<const std::string> tokens,
                               const EmbeddingTable& table) {
  EmbeddingAverage result;
  result.mean.assign(table.dimension(), 0.0);
  std::size_t hits = 0;
  for (const auto& t : tokens) {
    const auto v = table.find(t);
    if (v.empty()) continue;
    ++hits;
    for (std::size_t k = 0; k < v.size(); ++k) result.mean[k] += v[k];
  }
  if (hits > 0) {
    for (double& x : result.mean) x /= static_cast<double>(hits);
  }
  if (!tokens.empty()) {
    result.coverage = static_cast<double>(hits) / static_cast<double>(tokens.size());
  }
  return result;
}

std::array<double, 10> sentiment_features(std::span<const SentenceSentiment> sentences) {
  std::array<double, 10> out{};
  if (sentences.empty()) {
    for (std::size_t c = 0; c < 5; ++c) out[c] = 0.2;
    return out;
  }
  const double n = static_cast<double>(sentences.size());
  for (std::size_t c = 0; c < 5; ++c) {
    double mean = 0.0;
    for (const auto& s : sentences) mean += s.distribution[c];
    mean /= n;
    double var = 0.0;
    for (const auto& s : sentences) {
      const double d = s.distribution[c] - mean;
      var += d * d;
    }
    out[c] = mean;
    out[5 + c] = std::sqrt(var / n);
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  const auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(std::move(t));
    cur.clear();
  };
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?' || c == '\n') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

SentenceSentiment builtin_sentence_sentiment(std::span<const std::string> tokens,
                                             const SentimentLexicon& lexicon) {
  double pos = 0.0;
  double neg = 0.0;
  for (const auto& t : tokens) {
    if (lexicon.positive.count(t) > 0) pos += 1.0;
    if (lexicon.negative.count(t) > 0) neg += 1.0;
  }
  const double total = 1.0 + pos + neg;
  const double mild = lexicon.mild_share;
  SentenceSentiment s;
  s.distribution = {neg / total * (1.0 - mild), neg / total * mild, 1.0 / total,
                    pos / total * mild, pos / total * (1.0 - mild)};
  return s;
}

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
  std::ifstream in = open_resource(path, "word list");
  std::unordered_set<std::string> words;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    const std::string w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(ascii_lower(w));
  }
  return words;
}

void SentimentSidecar::add(const std::string& doc_id, std::size_t sentence_index,
                           const SentenceSentiment& s) {
  by_doc_[doc_id].emplace_back(sentence_index, s);
}

std::vector<SentenceSentiment> SentimentSidecar::sentences(const std::string& doc_id) const {
  std::vector<SentenceSentiment> out;
  const auto it = by_doc_.find(doc_id);
  if (it == by_doc_.end()) return out;
  auto rows = it->second;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.second);
  return out;
}

SentimentSidecar load_sentiment_sidecar(const std::filesystem::path& path) {
  std::ifstream in = open_resource(path, "sentiment sidecar");
  SentimentSidecar sidecar;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ResourceError("malformed sentiment row" + where(path, line_no));
    }
    std::size_t index = 0;
    const auto& idx = fields[1];
    const auto res = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (res.ec != std::errc() || res.ptr != idx.data() + idx.size()) {
      throw ResourceError("invalid sentence index" + where(path, line_no));
    }
    const auto probs = split_spaces(fields[2]);
    if (probs.size() != 5) {
      throw ResourceError("sentiment row needs 5 values" + where(path, line_no));
    }
    SentenceSentiment s;
    double sum = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
      double v = 0.0;
      try {
        v = parse_double(probs[c]);
      } catch (const DataError&) {
        throw ResourceError("invalid sentiment value" + where(path, line_no));
      }
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ResourceError("negative sentiment value" + where(path, line_no));
      }
      s.distribution[c] = v;
      sum += v;
    }
    // Tools print rounded probabilities; accept small drift and renormalise.
    if (std::abs(sum - 1.0) > 1e-3) {
      throw ResourceError("sentiment distribution does not sum to 1" + where(path, line_no));
    }
    for (double& v : s.distribution) v /= sum;
    sidecar.add(unescape_field(fields[0]), index, s);
  }
  return sidecar;
}

bool pattern_matches(std::string_view pattern, std::string_view token) {
  if (!pattern.empty() && pattern.back() == '*') {
    const std::string_view prefix = pattern.substr(0, pattern.size() - 1);
    return token.size() >= prefix.size() && token.substr(0, prefix.size()) == prefix;
  }
  return pattern == token;
}

CategoryLexicon load_category_lexicon(const std::filesystem::path& path) {
  std::ifstream in = open_resource(path, "category lexicon");
  CategoryLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2 || trim(fields[0]).empty()) {
      throw ResourceError("malformed category row" + where(path, line_no));
    }
    CategoryLexicon::Category cat;
    cat.name = trim(fields[0]);
    for (const auto& c : lexicon.categories) {
      if (c.name == cat.name) {
        throw ResourceError("duplicate category '" + cat.name + "'" + where(path, line_no));
      }
    }
    for (const auto& p : split(fields[1], ',')) {
      std::string pat = ascii_lower(trim(p));
      if (pat.empty() || pat == "*") continue;
      cat.patterns.push_back(std::move(pat));
    }
    if (cat.patterns.empty()) {
      throw ResourceError("category '" + cat.name + "' has no patterns" + where(path, line_no));
    }
    lexicon.categories.push_back(std::move(cat));
  }
  return lexicon;
}

std::vector<double> liwc_features(std::span<const std::string> tokens,
                                  const CategoryLexicon& lexicon) {
  std::vector<double> out(lexicon.categories.size(), 0.0);
  if (tokens.empty()) return out;
  for (std::size_t c = 0; c < lexicon.categories.size(); ++c) {
    const auto& patterns = lexicon.categories[c].patterns;
    std::size_t hits = 0;
    for (const auto& t : tokens) {
      const bool hit = std::any_of(patterns.begin(), patterns.end(),
                                   [&](const std::string& p) { return pattern_matches(p, t); });
      if (hit) ++hits;
    }
    out[c] = static_cast<double>(hits) / static_cast<double>(tokens.size());
  }
  return out;
}

WeightedLexicon load_weighted_lexicon(const std::filesystem::path& path) {
  std::ifstream in = open_resource(path, "weighted lexicon");
  WeightedLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw ResourceError("malformed lexicon row" + where(path, line_no));
    }
    double w = 0.0;
    try {
      w = parse_double(trim(fields[1]));
    } catch (const DataError&) {
      throw ResourceError("invalid lexicon weight" + where(path, line_no));
    }
    if (fields[0] == "_intercept") {
      lexicon.intercept = w;
    } else if (!lexicon.weights.emplace(ascii_lower(fields[0]), w).second) {
      throw ResourceError("duplicate lexicon word '" + fields[0] + "'" + where(path, line_no));
    }
  }
  return lexicon;
}

std::array<double, 2> gender_features(std::span<const std::string> tokens,
                                      const WeightedLexicon& lexicon) {
  double score = lexicon.intercept;
  for (const auto& t : tokens) {
    const auto it = lexicon.weights.find(t);
    if (it != lexicon.weights.end()) score += it->second;
  }
  const double p = sigmoid(score);
  return {p, p > 0.5 ? 1.0 : 0.0};
}

}  // namespace aggrid
