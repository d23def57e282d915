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

#ifndef AGGRID_PIPELINE_H_
#define AGGRID_PIPELINE_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aggrid/corpus_io.h"
#include "aggrid/featurize.h"
#include "aggrid/lexfeatures.h"
#include "aggrid/preprocess.h"

namespace aggrid {

// A file the fitted pipeline depends on. An empty checksum means "not yet
// computed"; a non-empty one is verified on load.
struct ResourceRef {
  std::string path;
  std::string checksum;

  bool empty() const { return path.empty(); }
  bool operator==(const ResourceRef&) const = default;
};

// Verifies (or fills in) the checksum. Throws ResourceError on a missing file
// or mismatch.
void verify_resource(ResourceRef& ref, std::string_view what);

struct PreprocessSettings {
  Language language = Language::kEnglish;
  CleanConfig clean = CleanConfig::english();
  bool transliterate = false;
  bool spell_correct = false;
  ResourceRef spell_dictionary;

  static PreprocessSettings defaults_for(Language language);
};

// A document after cleaning, ready for every feature block.
struct PreparedDocument {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<std::vector<std::string>> sentences;
};

// Transliteration (when the text holds Devanagari), cleaning, spell
// correction and tokenisation. Holds a correction memo, so one instance
// should not be shared across threads.
class Preprocessor {
 public:
  // Loads and checksums the spell dictionary when correction is enabled.
  explicit Preprocessor(PreprocessSettings settings);
  Preprocessor(PreprocessSettings settings, std::shared_ptr<const SpellDictionary> dict);

  const PreprocessSettings& settings() const { return settings_; }
  PreparedDocument prepare(const Document& doc);
  std::vector<PreparedDocument> prepare_all(const Corpus& corpus);
  std::string normalize(std::string_view text);
  std::size_t unknown_devanagari() const { return unknown_devanagari_; }

 private:
  PreprocessSettings settings_;
  std::shared_ptr<const SpellDictionary> dict_;
  std::optional<SpellCorrector> corrector_;
  std::size_t unknown_devanagari_ = 0;
};

class SentimentProvider {
 public:
  virtual ~SentimentProvider() = default;
  virtual std::vector<SentenceSentiment> sentences(const PreparedDocument& doc) const = 0;
};

// Reads precomputed distributions by document id.
class SidecarSentimentProvider : public SentimentProvider {
 public:
  explicit SidecarSentimentProvider(SentimentSidecar sidecar) : sidecar_(std::move(sidecar)) {}
  std::vector<SentenceSentiment> sentences(const PreparedDocument& doc) const override;

 private:
  SentimentSidecar sidecar_;
};

// Scores each sentence with the positive/negative word lists.
class LexiconSentimentProvider : public SentimentProvider {
 public:
  explicit LexiconSentimentProvider(SentimentLexicon lexicon) : lexicon_(std::move(lexicon)) {}
  std::vector<SentenceSentiment> sentences(const PreparedDocument& doc) const override;

 private:
  SentimentLexicon lexicon_;
};

// File references for the dense blocks.
struct ResourceSettings {
  ResourceRef embeddings;
  bool normalize_embeddings = false;
  ResourceRef liwc_lexicon;
  ResourceRef gender_lexicon;
  // Corpus-specific, so never checksummed.
  std::string sentiment_sidecar;
  ResourceRef sentiment_positive;
  ResourceRef sentiment_negative;
  double sentiment_mild_share = 0.7;
};

struct PipelineResources {
  ResourceSettings settings;
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::shared_ptr<const CategoryLexicon> liwc;
  std::shared_ptr<const WeightedLexicon> gender;
  std::shared_ptr<const SentimentProvider> sentiment;
};

// Loads only what `blocks` need, verifying or recording checksums. Throws
// UsageError when a needed reference is missing from `settings`.
PipelineResources load_resources(ResourceSettings settings,
                                 std::span<const FeatureBlockSpec> blocks);

class FeaturePipeline {
 public:
  struct BlockRange {
    std::size_t offset = 0;
    std::size_t dimension = 0;
  };

  FeaturePipeline(std::vector<FeatureBlockSpec> blocks, PipelineResources resources);

  // Fits vocabularies for lexical blocks and fixes every block's range.
  void fit(std::span<const PreparedDocument> docs);
  // Restores fitted state; `vocabularies` has one slot per block, empty for
  // dense blocks.
  void restore(std::vector<std::optional<Vocabulary>> vocabularies, std::size_t n_train_docs);

  bool fitted() const { return fitted_; }
  SparseVector transform(const PreparedDocument& doc) const;
  std::vector<SparseVector> transform_all(std::span<const PreparedDocument> docs) const;

  std::size_t total_dimension() const { return total_dimension_; }
  std::size_t n_train_docs() const { return n_train_docs_; }
  const std::vector<FeatureBlockSpec>& blocks() const { return blocks_; }
  const std::vector<BlockRange>& ranges() const { return ranges_; }
  const std::optional<Vocabulary>& vocabulary(std::size_t block) const {
    return vocabularies_[block];
  }
  const PipelineResources& resources() const { return resources_; }
  // `blockprefix_term`, e.g. `unigram_bc` or `char_4_gram_ kut`.
  std::string feature_name(std::size_t index) const;

 private:
  std::vector<std::string> lexical_terms(const FeatureBlockSpec& spec,
                                         const PreparedDocument& doc) const;
  SparseVector block_vector(std::size_t block, const PreparedDocument& doc) const;
  std::size_t dense_dimension(const FeatureBlockSpec& spec) const;
  void compute_ranges();

  std::vector<FeatureBlockSpec> blocks_;
  PipelineResources resources_;
  std::vector<std::optional<Vocabulary>> vocabularies_;
  std::vector<BlockRange> ranges_;
  std::size_t total_dimension_ = 0;
  std::size_t n_train_docs_ = 0;
  bool fitted_ = false;
};

}  // namespace aggrid

#endif  // AGGRID_PIPELINE_H_
