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

#ifndef AGGRID_FEATURIZE_H_
#define AGGRID_FEATURIZE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aggrid {

// Sorted (index, weight) pairs with no explicit zeros.
class SparseVector {
 public:
  struct Entry {
    std::uint32_t index;
    double weight;
    bool operator==(const Entry&) const = default;
  };

  SparseVector() = default;
  explicit SparseVector(std::size_t dimension) : dimension_(dimension) {}
  // Sorts, sums duplicate indices and drops zeros. Throws DataError for an
  // index outside the dimension.
  SparseVector(std::size_t dimension, std::vector<Entry> entries);

  std::size_t dimension() const { return dimension_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }

  double dot(std::span<const double> dense) const;
  double l2_norm() const;
  void scale(double factor);
  // Weight at `index`, zero when absent.
  double at(std::uint32_t index) const;
  std::vector<double> to_dense() const;

  // Appends `block` shifted into [offset, offset + block.dimension()).
  void append_block(const SparseVector& block, std::size_t offset);
  void set_dimension(std::size_t dimension);

  bool operator==(const SparseVector&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<Entry> entries_;
};

// Whitespace split, then leading/trailing punctuation peeled into separate
// tokens. Runs of one repeated punctuation mark stay whole, as does a token
// made only of punctuation (emoticons like `:)`).
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> word_ngrams(std::span<const std::string> tokens, int n);
// Windows over code points of the whole text, spaces included.
std::vector<std::string> char_ngrams(std::string_view text, int n);
// Ordered n-token subsequences with at most `k` tokens skipped between
// neighbours; k = 0 gives the contiguous n-grams.
std::vector<std::string> skip_grams(std::span<const std::string> tokens, int k, int n);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Terms must be unique; indices follow the given order.
  Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> document_frequency,
             std::size_t n_documents);

  std::size_t size() const { return terms_.size(); }
  std::size_t n_documents() const { return n_documents_; }
  std::optional<std::uint32_t> find(const std::string& term) const;
  const std::string& term(std::uint32_t index) const { return terms_[index]; }
  std::uint32_t document_frequency(std::uint32_t index) const { return df_[index]; }
  // ln((1 + N) / (1 + df)) + 1
  double idf(std::uint32_t index) const { return idf_[index]; }

  bool operator==(const Vocabulary& other) const {
    return terms_ == other.terms_ && df_ == other.df_ && n_documents_ == other.n_documents_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> df_;
  std::vector<double> idf_;
  std::size_t n_documents_ = 0;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Keeps terms with document frequency >= min_df, indexed lexicographically.
Vocabulary fit_vocabulary(std::span<const std::vector<std::string>> corpus_terms,
                          std::size_t min_df);

// Raw counts times smoothed IDF, L2-normalised. Unknown terms are ignored.
SparseVector tfidf_transform(std::span<const std::string> terms, const Vocabulary& vocab);
// 1.0 for every known term present.
SparseVector binary_transform(std::span<const std::string> terms, const Vocabulary& vocab);

enum class BlockKind {
  kWordNgram,
  kCharNgram,
  kSkipGram,
  kBinaryWordNgram,
  kEmbedding,
  kSentiment,
  kLiwc,
  kGender,
};

struct FeatureBlockSpec {
  BlockKind kind = BlockKind::kWordNgram;
  int n = 1;
  int k = 0;
  std::size_t min_df = 2;
  std::string name;

  bool lexical() const;
  // Throws UsageError when the parameters fall outside the supported grid.
  void validate() const;
  bool operator==(const FeatureBlockSpec&) const = default;
};

inline constexpr std::size_t kDefaultMinDf = 2;

// Canonical block names: U B T (word 1-3 grams), BU BB BT (binary word
// n-grams), C3 C4 C5 (char n-grams), SK2 SK3 (2-skip bi/trigrams), W2V, S,
// LIWC, GP.
FeatureBlockSpec block_from_name(std::string_view name, std::size_t min_df = kDefaultMinDf);
std::vector<FeatureBlockSpec> blocks_from_list(std::string_view list,
                                               std::size_t min_df = kDefaultMinDf);
// `unigram`, `char_tri_gram`, `char_4_gram`, ...
std::string feature_prefix(const FeatureBlockSpec& spec);

}  // namespace aggrid

#endif  // AGGRID_FEATURIZE_H_
