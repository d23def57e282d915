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

#include "aggrid/pipeline.h"

#include <cmath>

#include "aggrid/error.h"
#include "aggrid/text_util.h"

namespace aggrid {

void verify_resource(ResourceRef& ref, std::string_view what) {
  if (ref.empty()) throw UsageError(std::string(what) + " path is not configured");
  if (!std::filesystem::exists(ref.path)) {
    throw ResourceError(std::string(what) + " not found: " + ref.path);
  }
  const std::string actual = file_checksum(ref.path);
  if (!ref.checksum.empty() && ref.checksum != actual) {
    throw ResourceError(std::string(what) + " checksum mismatch for " + ref.path +
                        ": expected " + ref.checksum + ", found " + actual);
  }
  ref.checksum = actual;
}

PreprocessSettings PreprocessSettings::defaults_for(Language language) {
  PreprocessSettings s;
  s.language = language;
  if (language == Language::kHindi) {
    s.clean = CleanConfig::hindi();
    s.transliterate = true;
  } else {
    s.clean = CleanConfig::english();
    s.transliterate = false;
  }
  return s;
}

Preprocessor::Preprocessor(PreprocessSettings settings)
    : Preprocessor(std::move(settings), nullptr) {}

Preprocessor::Preprocessor(PreprocessSettings settings,
                           std::shared_ptr<const SpellDictionary> dict)
    : settings_(std::move(settings)), dict_(std::move(dict)) {
  if (!settings_.spell_correct) return;
  if (!dict_) {
    verify_resource(settings_.spell_dictionary, "spell dictionary");
    dict_ = std::make_shared<const SpellDictionary>(
        load_spell_dictionary(settings_.spell_dictionary.path));
  }
  corrector_.emplace(*dict_);
}

std::string Preprocessor::normalize(std::string_view text) {
  std::string s(text);
  if (settings_.transliterate && script_profile(s).devanagari_fraction > 0.0) {
    Romanized r = romanize_devanagari(s);
    unknown_devanagari_ += r.unknown_codepoints;
    s = std::move(r.text);
  }
  s = clean_text(s, settings_.clean);
  if (corrector_) s = corrector_->correct_text(s);
  return s;
}

PreparedDocument Preprocessor::prepare(const Document& doc) {
  PreparedDocument p;
  p.id = doc.id;
  p.text = normalize(doc.text);
  p.tokens = tokenize(p.text);
  for (const auto& sentence : split_sentences(p.text)) {
    p.sentences.push_back(tokenize(sentence));
  }
  return p;
}

std::vector<PreparedDocument> Preprocessor::prepare_all(const Corpus& corpus) {
  std::vector<PreparedDocument> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus.documents) out.push_back(prepare(d));
  return out;
}

std::vector<SentenceSentiment> SidecarSentimentProvider::sentences(
    const PreparedDocument& doc) const {
  return sidecar_.sentences(doc.id);
}

std::vector<SentenceSentiment> LexiconSentimentProvider::sentences(
    const PreparedDocument& doc) const {
  std::vector<SentenceSentiment> out;
  out.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) out.push_back(builtin_sentence_sentiment(s, lexicon_));
  return out;
}

PipelineResources load_resources(ResourceSettings settings,
                                 std::span<const FeatureBlockSpec> blocks) {
  PipelineResources res;
  for (const auto& b : blocks) {
    switch (b.kind) {
      case BlockKind::kEmbedding:
        if (res.embeddings) break;
        verify_resource(settings.embeddings, "embeddings");
        res.embeddings = std::make_shared<const EmbeddingTable>(
            load_embeddings(settings.embeddings.path));
        break;
      case BlockKind::kLiwc:
        if (res.liwc) break;
        verify_resource(settings.liwc_lexicon, "LIWC lexicon");
        res.liwc = std::make_shared<const CategoryLexicon>(
            load_category_lexicon(settings.liwc_lexicon.path));
        break;
      case BlockKind::kGender:
        if (res.gender) break;
        verify_resource(settings.gender_lexicon, "gender lexicon");
        res.gender = std::make_shared<const WeightedLexicon>(
            load_weighted_lexicon(settings.gender_lexicon.path));
        break;
      case BlockKind::kSentiment:
        if (res.sentiment) break;
        if (!settings.sentiment_sidecar.empty()) {
          if (!std::filesystem::exists(settings.sentiment_sidecar)) {
            throw ResourceError("sentiment sidecar not found: " + settings.sentiment_sidecar);
          }
          res.sentiment = std::make_shared<const SidecarSentimentProvider>(
              load_sentiment_sidecar(settings.sentiment_sidecar));
        } else {
          if (settings.sentiment_positive.empty() || settings.sentiment_negative.empty()) {
            throw UsageError(
                "sentiment block needs a sidecar file or positive/negative word lists");
          }
          verify_resource(settings.sentiment_positive, "positive word list");
          verify_resource(settings.sentiment_negative, "negative word list");
          SentimentLexicon lex;
          lex.positive = load_word_list(settings.sentiment_positive.path);
          lex.negative = load_word_list(settings.sentiment_negative.path);
          if (!(settings.sentiment_mild_share >= 0.0 && settings.sentiment_mild_share <= 1.0)) {
            throw UsageError("sentiment mild share must lie in [0, 1]");
          }
          lex.mild_share = settings.sentiment_mild_share;
          res.sentiment = std::make_shared<const LexiconSentimentProvider>(std::move(lex));
        }
        break;
      default:
        break;
    }
  }
  res.settings = std::move(settings);
  return res;
}

FeaturePipeline::FeaturePipeline(std::vector<FeatureBlockSpec> blocks,
                                 PipelineResources resources)
    : blocks_(std::move(blocks)), resources_(std::move(resources)) {
  if (blocks_.empty()) throw UsageError("pipeline needs at least one block");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    blocks_[i].validate();
    for (std::size_t j = 0; j < i; ++j) {
      if (blocks_[j].name == blocks_[i].name) {
        throw UsageError("duplicate feature block '" + blocks_[i].name + "'");
      }
    }
    // Fail before any fitting when a dense block has nothing to read.
    (void)dense_dimension(blocks_[i]);
  }
  vocabularies_.resize(blocks_.size());
}

std::size_t FeaturePipeline::dense_dimension(const FeatureBlockSpec& spec) const {
  switch (spec.kind) {
    case BlockKind::kEmbedding:
      if (!resources_.embeddings) throw UsageError("W2V block requires embeddings");
      return resources_.embeddings->dimension();
    case BlockKind::kSentiment:
      if (!resources_.sentiment) throw UsageError("S block requires a sentiment provider");
      return 10;
    case BlockKind::kLiwc:
      if (!resources_.liwc) throw UsageError("LIWC block requires a category lexicon");
      return resources_.liwc->categories.size();
    case BlockKind::kGender:
      if (!resources_.gender) throw UsageError("GP block requires a gender lexicon");
      return 2;
    default:
      return 0;
  }
}

std::vector<std::string> FeaturePipeline::lexical_terms(const FeatureBlockSpec& spec,
                                                        const PreparedDocument& doc) const {
  switch (spec.kind) {
    case BlockKind::kWordNgram:
    case BlockKind::kBinaryWordNgram:
      return word_ngrams(doc.tokens, spec.n);
    case BlockKind::kCharNgram:
      return char_ngrams(doc.text, spec.n);
    case BlockKind::kSkipGram:
      return skip_grams(doc.tokens, spec.k, spec.n);
    default:
      return {};
  }
}

void FeaturePipeline::compute_ranges() {
  ranges_.clear();
  std::size_t offset = 0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const std::size_t dim =
        blocks_[i].lexical() ? vocabularies_[i]->size() : dense_dimension(blocks_[i]);
    ranges_.push_back({offset, dim});
    offset += dim;
  }
  total_dimension_ = offset;
  if (total_dimension_ > 0xFFFFFFFFull) throw DataError("feature space exceeds 2^32");
}

void FeaturePipeline::fit(std::span<const PreparedDocument> docs) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& spec = blocks_[i];
    if (!spec.lexical()) continue;
    std::vector<std::vector<std::string>> terms;
    terms.reserve(docs.size());
    for (const auto& d : docs) terms.push_back(lexical_terms(spec, d));
    vocabularies_[i] = fit_vocabulary(terms, spec.min_df);
  }
  n_train_docs_ = docs.size();
  compute_ranges();
  fitted_ = true;
}

void FeaturePipeline::restore(std::vector<std::optional<Vocabulary>> vocabularies,
                              std::size_t n_train_docs) {
  if (vocabularies.size() != blocks_.size()) {
    throw DataError("vocabulary count does not match block count");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].lexical() != vocabularies[i].has_value()) {
      throw DataError("vocabulary presence mismatch for block " + blocks_[i].name);
    }
  }
  vocabularies_ = std::move(vocabularies);
  n_train_docs_ = n_train_docs;
  compute_ranges();
  fitted_ = true;
}

SparseVector FeaturePipeline::block_vector(std::size_t block,
                                           const PreparedDocument& doc) const {
  const auto& spec = blocks_[block];
  if (spec.kind == BlockKind::kWordNgram || spec.kind == BlockKind::kCharNgram ||
      spec.kind == BlockKind::kSkipGram) {
    return tfidf_transform(lexical_terms(spec, doc), *vocabularies_[block]);
  }
  if (spec.kind == BlockKind::kBinaryWordNgram) {
    return binary_transform(lexical_terms(spec, doc), *vocabularies_[block]);
  }
  std::vector<double> dense;
  switch (spec.kind) {
    case BlockKind::kEmbedding: {
      dense = embed_average(doc.tokens, *resources_.embeddings).mean;
      if (resources_.settings.normalize_embeddings) {
        double n2 = 0.0;
        for (double v : dense) n2 += v * v;
        if (n2 > 0.0) {
          const double n = std::sqrt(n2);
          for (double& v : dense) v /= n;
        }
      }
      break;
    }
    case BlockKind::kSentiment: {
      const auto f = sentiment_features(resources_.sentiment->sentences(doc));
      dense.assign(f.begin(), f.end());
      break;
    }
    case BlockKind::kLiwc:
      dense = liwc_features(doc.tokens, *resources_.liwc);
      break;
    case BlockKind::kGender: {
      const auto f = gender_features(doc.tokens, *resources_.gender);
      dense.assign(f.begin(), f.end());
      break;
    }
    default:
      break;
  }
  std::vector<SparseVector::Entry> entries;
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (!std::isfinite(dense[k])) throw DataError("non-finite dense feature in " + spec.name);
    if (dense[k] != 0.0) entries.push_back({static_cast<std::uint32_t>(k), dense[k]});
  }
  return SparseVector(dense.size(), std::move(entries));
}

SparseVector FeaturePipeline::transform(const PreparedDocument& doc) const {
  if (!fitted_) throw UsageError("feature pipeline is not fitted");
  SparseVector out(0);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    SparseVector v = block_vector(i, doc);
    if (v.dimension() != ranges_[i].dimension) {
      throw DataError("block " + blocks_[i].name + " changed dimension since fitting");
    }
    out.append_block(v, ranges_[i].offset);
  }
  return out;
}

std::vector<SparseVector> FeaturePipeline::transform_all(
    std::span<const PreparedDocument> docs) const {
  std::vector<SparseVector> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(transform(d));
  return out;
}

std::string FeaturePipeline::feature_name(std::size_t index) const {
  if (!fitted_) throw UsageError("feature pipeline is not fitted");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& r = ranges_[i];
    if (index < r.offset || index >= r.offset + r.dimension) continue;
    const auto& spec = blocks_[i];
    const std::size_t local = index - r.offset;
    const std::string prefix = feature_prefix(spec) + "_";
    if (spec.lexical()) {
      return prefix + vocabularies_[i]->term(static_cast<std::uint32_t>(local));
    }
    switch (spec.kind) {
      case BlockKind::kSentiment:
        return prefix + (local < 5 ? "mean_" : "std_") +
               std::string(kSentimentClassNames[local % 5]);
      case BlockKind::kLiwc:
        return prefix + resources_.liwc->categories[local].name;
      case BlockKind::kGender:
        return prefix + (local == 0 ? "probability" : "binary");
      default:
        return prefix + std::to_string(local);
    }
  }
  throw DataError("feature index " + std::to_string(index) + " out of range");
}

}  // namespace aggrid
