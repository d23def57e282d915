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

#ifndef AGGRID_LEXFEATURES_H_
#define AGGRID_LEXFEATURES_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace aggrid {

// Pretrained word vectors in a contiguous float buffer.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension = 0) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  // Returns false when the word is already present.
  bool add(const std::string& word, std::span<const float> vector);
  // Empty span for unknown words.
  std::span<const float> find(const std::string& word) const;
  const std::string& word(std::size_t row) const { return words_[row]; }

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> rows_;
};

// Text format: header `V d`, then `word v1 ... vd` per line.
EmbeddingTable load_embeddings(const std::filesystem::path& path);

struct EmbeddingAverage {
  std::vector<double> mean;
  double coverage = 0.0;  // in-table tokens / all tokens
};

// Mean of the vectors of in-table tokens; unknown tokens are skipped.
EmbeddingAverage embed_average(std::span<const std::string> tokens,
                               const EmbeddingTable& table);

// Five-way distribution: very negative, negative, neutral, positive,
// very positive.
struct SentenceSentiment {
  std::array<double, 5> distribution{0.0, 0.0, 1.0, 0.0, 0.0};
};

inline constexpr std::array<std::string_view, 5> kSentimentClassNames = {
    "very_negative", "negative", "neutral", "positive", "very_positive"};

// Componentwise mean followed by componentwise population std. No sentences
// gives a uniform mean and zero spread.
std::array<double, 10> sentiment_features(std::span<const SentenceSentiment> sentences);

// Splits on `.`, `!`, `?` and newline, dropping empty segments.
std::vector<std::string> split_sentences(std::string_view text);

struct SentimentLexicon {
  std::unordered_set<std::string> positive;
  std::unordered_set<std::string> negative;
  // Share of each polarity's mass placed on the milder class.
  double mild_share = 0.7;
};

SentenceSentiment builtin_sentence_sentiment(std::span<const std::string> tokens,
                                             const SentimentLexicon& lexicon);

// One word per line, lowercased on load; blank lines and `#` comments skipped.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

// Precomputed per-sentence distributions keyed by document id:
// `doc_id<TAB>sent_index<TAB>p1 p2 p3 p4 p5`.
class SentimentSidecar {
 public:
  void add(const std::string& doc_id, std::size_t sentence_index,
           const SentenceSentiment& s);
  // Sentences ordered by index; empty when the document is absent.
  std::vector<SentenceSentiment> sentences(const std::string& doc_id) const;
  std::size_t documents() const { return by_doc_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, SentenceSentiment>>>
      by_doc_;
};

SentimentSidecar load_sentiment_sidecar(const std::filesystem::path& path);

// Categories in file order; patterns are literals or `prefix*` wildcards.
struct CategoryLexicon {
  struct Category {
    std::string name;
    std::vector<std::string> patterns;
  };
  std::vector<Category> categories;
};

bool pattern_matches(std::string_view pattern, std::string_view token);

// `category<TAB>pattern1,pattern2,...` per line.
CategoryLexicon load_category_lexicon(const std::filesystem::path& path);

// Per category: fraction of tokens matching any of its patterns.
std::vector<double> liwc_features(std::span<const std::string> tokens,
                                  const CategoryLexicon& lexicon);

struct WeightedLexicon {
  std::unordered_map<std::string, double> weights;
  double intercept = 0.0;
};

// `word<TAB>weight` lines plus an optional `_intercept<TAB>value` row.
WeightedLexicon load_weighted_lexicon(const std::filesystem::path& path);

// (probability, binary): probability is the logistic of the lexicon score,
// binary is 1 only when the probability is strictly above 0.5.
std::array<double, 2> gender_features(std::span<const std::string> tokens,
                                      const WeightedLexicon& lexicon);

double sigmoid(double z);

}  // namespace aggrid

#endif  // AGGRID_LEXFEATURES_H_
