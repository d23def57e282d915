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

#include "aggrid/featurize.h"

#include <algorithm>
#include <cmath>
#include <cctype>

#include "aggrid/error.h"
#include "aggrid/text_util.h"

namespace aggrid {

SparseVector::SparseVector(std::size_t dimension, std::vector<Entry> entries)
    : dimension_(dimension) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  entries_.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.index >= dimension_) {
      throw DataError("sparse index " + std::to_string(e.index) +
                      " outside dimension " + std::to_string(dimension_));
    }
    if (!entries_.empty() && entries_.back().index == e.index) {
      entries_.back().weight += e.weight;
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.weight == 0.0; });
}

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.weight * dense[e.index];
  return s;
}

double SparseVector::l2_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.weight * e.weight;
  return std::sqrt(s);
}

void SparseVector::scale(double factor) {
  for (auto& e : entries_) e.weight *= factor;
  std::erase_if(entries_, [](const Entry& e) { return e.weight == 0.0; });
}

double SparseVector::at(std::uint32_t index) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::uint32_t i) { return e.index < i; });
  return it != entries_.end() && it->index == index ? it->weight : 0.0;
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dimension_, 0.0);
  for (const auto& e : entries_) out[e.index] = e.weight;
  return out;
}

void SparseVector::append_block(const SparseVector& block, std::size_t offset) {
  if (offset < dimension_) {
    throw DataError("block offset overlaps existing range");
  }
  dimension_ = offset + block.dimension();
  for (const auto& e : block.entries_) {
    entries_.push_back({static_cast<std::uint32_t>(offset + e.index), e.weight});
  }
}

void SparseVector::set_dimension(std::size_t dimension) {
  if (!entries_.empty() && entries_.back().index >= dimension) {
    throw DataError("dimension smaller than stored index");
  }
  dimension_ = dimension;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string cps = utf8_decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_unicode_space(cps[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !is_unicode_space(cps[j])) ++j;
    const std::u32string_view chunk(cps.data() + i, j - i);
    i = j;

    std::size_t b = 0;
    std::size_t e = chunk.size();
    while (b < e && is_punct(chunk[b])) ++b;
    if (b == e) {
      tokens.push_back(utf8_encode(chunk));
      continue;
    }
    while (e > b && is_punct(chunk[e - 1])) --e;

    // Leading punctuation, one run of identical marks per token.
    std::size_t p = 0;
    while (p < b) {
      std::size_t q = p + 1;
      while (q < b && chunk[q] == chunk[p]) ++q;
      tokens.push_back(utf8_encode(chunk.substr(p, q - p)));
      p = q;
    }
    tokens.push_back(utf8_encode(chunk.substr(b, e - b)));
    p = e;
    while (p < chunk.size()) {
      std::size_t q = p + 1;
      while (q < chunk.size() && chunk[q] == chunk[p]) ++q;
      tokens.push_back(utf8_encode(chunk.substr(p, q - p)));
      p = q;
    }
  }
  return tokens;
}

std::vector<std::string> word_ngrams(std::span<const std::string> tokens, int n) {
  if (n < 1) throw UsageError("word n-gram order must be >= 1");
  std::vector<std::string> out;
  const std::size_t un = static_cast<std::size_t>(n);
  if (tokens.size() < un) return out;
  out.reserve(tokens.size() - un + 1);
  for (std::size_t i = 0; i + un <= tokens.size(); ++i) {
    std::string g = tokens[i];
    for (std::size_t k = 1; k < un; ++k) {
      g.push_back(' ');
      g += tokens[i + k];
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::string> char_ngrams(std::string_view text, int n) {
  if (n < 1) throw UsageError("char n-gram order must be >= 1");
  const std::u32string cps = utf8_decode(text);
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<std::string> out;
  if (cps.size() < un) return out;
  out.reserve(cps.size() - un + 1);
  for (std::size_t i = 0; i + un <= cps.size(); ++i) {
    out.push_back(utf8_encode(std::u32string_view(cps).substr(i, un)));
  }
  return out;
}

namespace {

void extend_skip_gram(std::span<const std::string> tokens, std::size_t max_step,
                      std::size_t n, std::vector<std::size_t>& picked,
                      std::vector<std::string>& out) {
  if (picked.size() == n) {
    std::string g = tokens[picked[0]];
    for (std::size_t k = 1; k < n; ++k) {
      g.push_back(' ');
      g += tokens[picked[k]];
    }
    out.push_back(std::move(g));
    return;
  }
  const std::size_t last = picked.back();
  for (std::size_t next = last + 1; next < tokens.size() && next - last <= max_step; ++next) {
    picked.push_back(next);
    extend_skip_gram(tokens, max_step, n, picked, out);
    picked.pop_back();
  }
}

}  // namespace

std::vector<std::string> skip_grams(std::span<const std::string> tokens, int k, int n) {
  if (k < 0) throw UsageError("skip distance must be >= 0");
  if (n < 2) throw UsageError("skip-gram order must be >= 2");
  std::vector<std::string> out;
  std::vector<std::size_t> picked;
  const std::size_t max_step = static_cast<std::size_t>(k) + 1;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    picked.assign(1, start);
    extend_skip_gram(tokens, max_step, static_cast<std::size_t>(n), picked, out);
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms,
                       std::vector<std::uint32_t> document_frequency,
                       std::size_t n_documents)
    : terms_(std::move(terms)), df_(std::move(document_frequency)), n_documents_(n_documents) {
  if (terms_.size() != df_.size()) {
    throw DataError("vocabulary terms and document frequencies differ in length");
  }
  idf_.reserve(terms_.size());
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (df_[i] < 1) throw DataError("document frequency must be >= 1 for '" + terms_[i] + "'");
    if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second) {
      throw DataError("duplicate vocabulary term '" + terms_[i] + "'");
    }
    idf_.push_back(std::log((1.0 + static_cast<double>(n_documents_)) /
                            (1.0 + static_cast<double>(df_[i]))) +
                   1.0);
  }
}

std::optional<std::uint32_t> Vocabulary::find(const std::string& term) const {
  const auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary fit_vocabulary(std::span<const std::vector<std::string>> corpus_terms,
                          std::size_t min_df) {
  if (min_df < 1) throw UsageError("min_df must be >= 1");
  std::unordered_map<std::string, std::uint32_t> df;
  std::vector<std::string> unique;
  for (const auto& doc : corpus_terms) {
    unique = doc;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto& t : unique) ++df[std::move(t)];
  }
  std::vector<std::pair<std::string, std::uint32_t>> kept;
  for (auto& [term, count] : df) {
    if (count >= min_df) kept.emplace_back(term, count);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<std::string> terms;
  std::vector<std::uint32_t> counts;
  terms.reserve(kept.size());
  counts.reserve(kept.size());
  for (auto& [term, count] : kept) {
    terms.push_back(std::move(term));
    counts.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(counts), corpus_terms.size());
}

namespace {

std::vector<SparseVector::Entry> count_terms(std::span<const std::string> terms,
                                             const Vocabulary& vocab) {
  std::vector<std::uint32_t> ids;
  ids.reserve(terms.size());
  for (const auto& t : terms) {
    if (const auto id = vocab.find(t)) ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  std::vector<SparseVector::Entry> entries;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    entries.push_back({ids[i], static_cast<double>(j - i)});
    i = j;
  }
  return entries;
}

}  // namespace

SparseVector tfidf_transform(std::span<const std::string> terms, const Vocabulary& vocab) {
  auto entries = count_terms(terms, vocab);
  double norm2 = 0.0;
  for (auto& e : entries) {
    e.weight *= vocab.idf(e.index);
    norm2 += e.weight * e.weight;
  }
  if (norm2 > 0.0) {
    const double norm = std::sqrt(norm2);
    for (auto& e : entries) e.weight /= norm;
  }
  return SparseVector(vocab.size(), std::move(entries));
}

SparseVector binary_transform(std::span<const std::string> terms, const Vocabulary& vocab) {
  auto entries = count_terms(terms, vocab);
  for (auto& e : entries) e.weight = 1.0;
  return SparseVector(vocab.size(), std::move(entries));
}

bool FeatureBlockSpec::lexical() const {
  return kind == BlockKind::kWordNgram || kind == BlockKind::kCharNgram ||
         kind == BlockKind::kSkipGram || kind == BlockKind::kBinaryWordNgram;
}

void FeatureBlockSpec::validate() const {
  const auto fail = [&](const std::string& why) {
    throw UsageError("invalid feature block '" + name + "': " + why);
  };
  if (name.empty()) fail("empty name");
  switch (kind) {
    case BlockKind::kWordNgram:
    case BlockKind::kBinaryWordNgram:
      if (n < 1 || n > 3) fail("word n-gram order must be 1, 2 or 3");
      break;
    case BlockKind::kCharNgram:
      if (n < 3 || n > 5) fail("char n-gram order must be 3, 4 or 5");
      break;
    case BlockKind::kSkipGram:
      if (k != 2 || (n != 2 && n != 3)) fail("skip-grams use k = 2 and n = 2 or 3");
      break;
    default:
      break;
  }
  if (lexical() && min_df < 1) fail("min_df must be >= 1");
}

FeatureBlockSpec block_from_name(std::string_view raw, std::size_t min_df) {
  std::string name = trim(raw);
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  FeatureBlockSpec spec;
  spec.name = name;
  spec.min_df = min_df;
  if (name == "U" || name == "B" || name == "T") {
    spec.kind = BlockKind::kWordNgram;
    spec.n = name == "U" ? 1 : name == "B" ? 2 : 3;
  } else if (name == "BU" || name == "BB" || name == "BT") {
    spec.kind = BlockKind::kBinaryWordNgram;
    spec.n = name == "BU" ? 1 : name == "BB" ? 2 : 3;
  } else if (name == "C3" || name == "C4" || name == "C5") {
    spec.kind = BlockKind::kCharNgram;
    spec.n = name[1] - '0';
  } else if (name == "SK2" || name == "SK3") {
    spec.kind = BlockKind::kSkipGram;
    spec.k = 2;
    spec.n = name[2] - '0';
  } else if (name == "W2V") {
    spec.kind = BlockKind::kEmbedding;
  } else if (name == "S") {
    spec.kind = BlockKind::kSentiment;
  } else if (name == "LIWC") {
    spec.kind = BlockKind::kLiwc;
  } else if (name == "GP") {
    spec.kind = BlockKind::kGender;
  } else {
    throw UsageError("unknown feature block '" + name + "'");
  }
  spec.validate();
  return spec;
}

std::vector<FeatureBlockSpec> blocks_from_list(std::string_view list, std::size_t min_df) {
  std::string normalized(list);
  std::replace(normalized.begin(), normalized.end(), '+', ',');
  std::vector<FeatureBlockSpec> blocks;
  for (const auto& part : split(normalized, ',')) {
    if (trim(part).empty()) continue;
    FeatureBlockSpec spec = block_from_name(part, min_df);
    for (const auto& b : blocks) {
      if (b.name == spec.name) throw UsageError("duplicate feature block '" + spec.name + "'");
    }
    blocks.push_back(std::move(spec));
  }
  if (blocks.empty()) throw UsageError("no feature blocks configured");
  return blocks;
}

std::string feature_prefix(const FeatureBlockSpec& spec) {
  static constexpr std::string_view kWordNames[] = {"", "unigram", "bigram", "trigram"};
  switch (spec.kind) {
    case BlockKind::kWordNgram:
      return std::string(kWordNames[spec.n]);
    case BlockKind::kBinaryWordNgram:
      return "binary_" + std::string(kWordNames[spec.n]);
    case BlockKind::kCharNgram:
      return spec.n == 3 ? "char_tri_gram" : "char_" + std::to_string(spec.n) + "_gram";
    case BlockKind::kSkipGram:
      return std::to_string(spec.k) + "_skip_" + std::string(kWordNames[spec.n]);
    case BlockKind::kEmbedding:
      return "w2v";
    case BlockKind::kSentiment:
      return "sentiment";
    case BlockKind::kLiwc:
      return "liwc";
    case BlockKind::kGender:
      return "gender";
  }
  return spec.name;
}

}  // namespace aggrid
