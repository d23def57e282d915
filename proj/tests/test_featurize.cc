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

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "aggrid/error.h"
#include "aggrid/featurize.h"
#include "aggrid/pipeline.h"
#include "oracles.h"
#include "test_util.h"

namespace aggrid {
namespace {

using testing::brute_skip_grams;
using testing::dense_tfidf;
using testing::uniform_index;
using Strings = std::vector<std::string>;

TEST_CASE("tokenize") {
  CHECK(tokenize("hello, world!") == Strings{"hello", ",", "world", "!"});
  CHECK(tokenize("wow!!!") == Strings{"wow", "!!!"});
  CHECK(tokenize("") == Strings{});
  CHECK(tokenize("  \t\n ") == Strings{});
  CHECK(tokenize("nice :) ...") == Strings{"nice", ":)", "..."});
  CHECK(tokenize("(really?!)") == Strings{"(", "really", "?", "!", ")"});
  CHECK(tokenize("don't stop") == Strings{"don't", "stop"});
  CHECK(tokenize("\"quoted\"") == Strings{"\"", "quoted", "\""});
  CHECK(tokenize("a\xE2\x80\x83" "b") == Strings{"a", "b"});  // em space
}

TEST_CASE("word_ngrams") {
  const Strings abc{"a", "b", "c"};
  CHECK(word_ngrams(abc, 2) == Strings{"a b", "b c"});
  CHECK(word_ngrams(abc, 1) == abc);
  CHECK(word_ngrams(Strings{"a", "b"}, 3) == Strings{});
  CHECK(word_ngrams(Strings{"a", "a"}, 1) == Strings{"a", "a"});
}

TEST_CASE("property: word n-gram count") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const Strings tokens = testing::random_tokens(rng, 10);
    for (int n = 1; n <= 3; ++n) {
      const std::size_t expect =
          tokens.size() + 1 > static_cast<std::size_t>(n) ? tokens.size() - n + 1 : 0;
      CHECK(word_ngrams(tokens, n).size() == expect);
    }
  }
}

TEST_CASE("char_ngrams") {
  CHECK(char_ngrams("abcd", 3) == Strings{"abc", "bcd"});
  CHECK(char_ngrams("ab cd", 3) == Strings{"ab ", "b c", " cd"});
  CHECK(char_ngrams("ab", 3) == Strings{});
  // Windows count code points, not bytes.
  CHECK(char_ngrams("\xC3\xA9t\xC3\xA9", 2) == Strings{"\xC3\xA9t", "t\xC3\xA9"});
}

TEST_CASE("skip_grams") {
  const Strings abcd{"a", "b", "c", "d"};
  CHECK(skip_grams(abcd, 2, 2) == Strings{"a b", "a c", "a d", "b c", "b d", "c d"});
  CHECK(skip_grams(Strings{"a", "b"}, 0, 2) == Strings{"a b"});
  CHECK(skip_grams(Strings{"a"}, 2, 2) == Strings{});
  CHECK(skip_grams(Strings{"a", "b", "c", "d", "e"}, 1, 3) ==
        Strings{"a b c", "a b d", "a c d", "a c e", "b c d", "b c e", "b d e", "c d e"});
  CHECK_THROWS_AS(skip_grams(abcd, -1, 2), UsageError);
  CHECK_THROWS_AS(skip_grams(abcd, 2, 1), UsageError);
}

TEST_CASE("property: skip_grams match brute-force enumeration") {
  std::size_t lists = 0;
  // Distinct tokens for every length up to 8.
  for (std::size_t len = 0; len <= 8; ++len) {
    Strings tokens;
    for (std::size_t i = 0; i < len; ++i) tokens.push_back("t" + std::to_string(i));
    for (int n : {2, 3}) {
      CHECK(skip_grams(tokens, 2, n) == brute_skip_grams(tokens, 2, n));
    }
    ++lists;
  }
  // Every list over a two-letter alphabet up to length 8, so repeats are covered.
  for (std::size_t len = 0; len <= 8; ++len) {
    for (std::uint32_t code = 0; code < (1u << len); ++code) {
      Strings tokens;
      for (std::size_t i = 0; i < len; ++i) tokens.push_back((code >> i) & 1 ? "x" : "y");
      for (int n : {2, 3}) {
        REQUIRE(skip_grams(tokens, 2, n) == brute_skip_grams(tokens, 2, n));
      }
      ++lists;
    }
  }
  CHECK(lists == 9 + 511);
}

TEST_CASE("property: skip_grams with k = 0 are word n-grams") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const Strings tokens = testing::random_tokens(rng, 9);
    for (int n : {2, 3}) CHECK(skip_grams(tokens, 0, n) == word_ngrams(tokens, n));
  }
}

TEST_CASE("fit_vocabulary") {
  const std::vector<Strings> docs{{"a", "b"}, {"a"}};
  const Vocabulary v1 = fit_vocabulary(docs, 1);
  REQUIRE(v1.size() == 2);
  CHECK(v1.find("a") == 0u);
  CHECK(v1.find("b") == 1u);
  CHECK(v1.document_frequency(0) == 2);
  CHECK(v1.document_frequency(1) == 1);
  CHECK(v1.n_documents() == 2);

  const Vocabulary v2 = fit_vocabulary(docs, 2);
  REQUIRE(v2.size() == 1);
  CHECK(v2.term(0) == "a");
  CHECK_FALSE(v2.find("b").has_value());

  CHECK(fit_vocabulary(std::vector<Strings>{}, 1).size() == 0);
  // Repeats inside one document count once.
  const Vocabulary v3 = fit_vocabulary(std::vector<Strings>{{"z", "z", "y"}}, 1);
  CHECK(v3.term(0) == "y");
  CHECK(v3.document_frequency(1) == 1);
}

TEST_CASE("tfidf_transform") {
  const Vocabulary vocab = fit_vocabulary(std::vector<Strings>{{"a"}, {"a", "b"}}, 1);
  CHECK(vocab.idf(0) == doctest::Approx(1.0).epsilon(1e-15));
  const SparseVector aa = tfidf_transform(Strings{"a", "a"}, vocab);
  REQUIRE(aa.nnz() == 1);
  CHECK(aa.at(0) == 1.0);

  CHECK(tfidf_transform(Strings{"q", "r"}, vocab).empty());

  const SparseVector ab = tfidf_transform(Strings{"a", "b"}, vocab);
  const double wa = 1.0;
  const double wb = std::log(3.0 / 2.0) + 1.0;
  const double norm = std::sqrt(wa * wa + wb * wb);
  CHECK(std::abs(ab.at(0) - wa / norm) <= 1e-12);
  CHECK(std::abs(ab.at(1) - wb / norm) <= 1e-12);
  CHECK(ab.dimension() == 2);
}

TEST_CASE("binary_transform") {
  const Vocabulary vocab = fit_vocabulary(std::vector<Strings>{{"a", "b"}}, 1);
  const SparseVector v = binary_transform(Strings{"a", "a", "b"}, vocab);
  CHECK(v.at(0) == 1.0);
  CHECK(v.at(1) == 1.0);
  CHECK(binary_transform(Strings(100, "a"), vocab).entries().size() == 1);
  CHECK(binary_transform(Strings(100, "a"), vocab).at(0) == 1.0);
  CHECK(binary_transform(Strings{"zz"}, vocab).empty());
}

TEST_CASE("property: tfidf matches a dense oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Strings> docs(1 + uniform_index(rng, 20));
    for (auto& d : docs) d = testing::random_tokens(rng, 12, 8);
    const std::size_t min_df = 1 + uniform_index(rng, 3);
    const Vocabulary vocab = fit_vocabulary(docs, min_df);
    Strings terms;
    std::vector<Strings> queries = docs;
    queries.push_back(testing::random_tokens(rng, 12, 10));
    const auto dense = dense_tfidf(docs, queries, min_df, terms);
    REQUIRE(vocab.size() == terms.size());
    for (std::size_t j = 0; j < terms.size(); ++j) CHECK(vocab.term(static_cast<std::uint32_t>(j)) == terms[j]);
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const auto got = tfidf_transform(queries[i], vocab).to_dense();
      REQUIRE(got.size() == dense[i].size());
      for (std::size_t j = 0; j < got.size(); ++j) {
        REQUIRE(std::abs(got[j] - dense[i][j]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("property: tfidf vectors are unit length") {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Strings> docs(1 + uniform_index(rng, 10));
    for (auto& d : docs) d = testing::random_tokens(rng, 10, 6);
    const Vocabulary vocab = fit_vocabulary(docs, 1);
    const SparseVector v = tfidf_transform(testing::random_tokens(rng, 10, 8), vocab);
    if (!v.empty()) CHECK(std::abs(v.l2_norm() - 1.0) <= 1e-9);
  }
}

TEST_CASE("SparseVector invariants") {
  const SparseVector v(10, {{5, 1.0}, {2, 3.0}, {5, -1.0}, {7, 0.0}, {2, 1.0}});
  REQUIRE(v.nnz() == 1);
  CHECK(v.entries()[0] == SparseVector::Entry{2, 4.0});
  CHECK(v.at(5) == 0.0);
  CHECK_THROWS_AS(SparseVector(3, {{3, 1.0}}), DataError);

  SparseVector acc(2, {{1, 2.0}});
  acc.append_block(SparseVector(3, {{0, 5.0}}), 2);
  CHECK(acc.dimension() == 5);
  CHECK(acc.at(2) == 5.0);
  const std::vector<double> dense{1, 1, 1, 1, 1};
  CHECK(acc.dot(dense) == 7.0);
  acc.scale(0.5);
  CHECK(acc.at(1) == 1.0);
}

TEST_CASE("block names") {
  CHECK(block_from_name("U").kind == BlockKind::kWordNgram);
  CHECK(block_from_name("T").n == 3);
  CHECK(block_from_name("BU").kind == BlockKind::kBinaryWordNgram);
  CHECK(block_from_name("C4").kind == BlockKind::kCharNgram);
  CHECK(block_from_name("C4").n == 4);
  CHECK(block_from_name("SK3").k == 2);
  CHECK(block_from_name("SK3").n == 3);
  CHECK(block_from_name("W2V").kind == BlockKind::kEmbedding);
  CHECK(block_from_name("u", 5).min_df == 5);
  CHECK(block_from_name(" c4 ").name == "C4");
  CHECK_THROWS_AS(block_from_name("C9"), UsageError);
  const auto list = blocks_from_list("BU + U + C4 + C5 + W2V");
  REQUIRE(list.size() == 5);
  CHECK(list[4].name == "W2V");
  CHECK(blocks_from_list("U,C3,C4,C5").size() == 4);
  CHECK_THROWS_AS(blocks_from_list("U,U"), UsageError);
  CHECK_THROWS_AS(blocks_from_list(""), UsageError);

  CHECK(feature_prefix(block_from_name("U")) == "unigram");
  CHECK(feature_prefix(block_from_name("B")) == "bigram");
  CHECK(feature_prefix(block_from_name("BU")) == "binary_unigram");
  CHECK(feature_prefix(block_from_name("C3")) == "char_tri_gram");
  CHECK(feature_prefix(block_from_name("C4")) == "char_4_gram");
  CHECK(feature_prefix(block_from_name("C5")) == "char_5_gram");
  CHECK(feature_prefix(block_from_name("SK2")) == "2_skip_bigram");

  FeatureBlockSpec bad;
  bad.kind = BlockKind::kCharNgram;
  bad.n = 2;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = block_from_name("U");
  bad.min_df = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
}

std::vector<PreparedDocument> prepare(const std::vector<std::string>& texts) {
  Preprocessor pre(PreprocessSettings::defaults_for(Language::kEnglish));
  std::vector<PreparedDocument> out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    out.push_back(pre.prepare(Document{"d" + std::to_string(i), texts[i], {}}));
  }
  return out;
}

FeaturePipeline fitted(const std::string& blocks, const std::vector<PreparedDocument>& docs,
                       std::size_t min_df = 1) {
  FeaturePipeline p(blocks_from_list(blocks, min_df), PipelineResources{});
  p.fit(docs);
  return p;
}

TEST_CASE("single-block pipeline equals the block transform") {
  const auto docs = prepare({"a b", "b c"});
  const FeaturePipeline p = fitted("U", docs);
  const Vocabulary vocab = fit_vocabulary(std::vector<Strings>{{"a", "b"}, {"b", "c"}}, 1);
  CHECK(p.transform(docs[0]) == tfidf_transform(Strings{"a", "b"}, vocab));
  CHECK(p.feature_name(0) == "unigram_a");
}

TEST_CASE("block offsets follow declaration order") {
  const auto docs = prepare({"abc", "abd"});
  // U and C3 both see {abc, abd}.
  const FeaturePipeline p = fitted("U,C3", docs);
  REQUIRE(p.ranges().size() == 2);
  CHECK(p.ranges()[0].offset == 0);
  CHECK(p.ranges()[0].dimension == 2);  // abc, abd
  CHECK(p.ranges()[1].offset == 2);
  CHECK(p.ranges()[1].dimension == 2);
  CHECK(p.total_dimension() == 4);
  const SparseVector x = p.transform(docs[0]);
  const auto c3 = fit_vocabulary(std::vector<Strings>{{"abc"}, {"abd"}}, 1);
  const SparseVector c3_only = tfidf_transform(Strings{"abc"}, c3);
  CHECK(x.at(2 + *c3.find("abc")) == c3_only.at(*c3.find("abc")));
  CHECK(p.feature_name(2) == "char_tri_gram_abc");
}

TEST_CASE("empty text gives the zero vector") {
  const auto docs = prepare({"some words here", "more words"});
  const FeaturePipeline p = fitted("U,C3,SK2", docs);
  const SparseVector z = p.transform(prepare({""})[0]);
  CHECK(z.empty());
  CHECK(z.dimension() == p.total_dimension());
}

TEST_CASE("unfitted pipeline refuses to transform") {
  FeaturePipeline p(blocks_from_list("U"), PipelineResources{});
  CHECK_FALSE(p.fitted());
  CHECK_THROWS_AS(p.transform(prepare({"a"})[0]), UsageError);
  CHECK_THROWS_AS(FeaturePipeline(blocks_from_list("W2V"), PipelineResources{}), UsageError);
}

TEST_CASE("property: ranges are contiguous and transforms stay inside them") {
  std::mt19937_64 rng(55);
  const char* configs[] = {"U", "U,B,T", "BU,U,C4,C5", "U,C3,C4,C5", "C3,SK2,SK3,BB,BT"};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::string> texts(2 + uniform_index(rng, 10));
    for (auto& t : texts) {
      for (const auto& tok : testing::random_tokens(rng, 8, 5)) t += tok + " ";
    }
    const auto docs = prepare(texts);
    const FeaturePipeline p = fitted(configs[trial % 5], docs, 1 + trial % 2);
    std::size_t expect = 0;
    for (const auto& r : p.ranges()) {
      CHECK(r.offset == expect);
      expect += r.dimension;
    }
    CHECK(expect == p.total_dimension());
    for (const auto& d : docs) {
      const SparseVector x = p.transform(d);
      CHECK(x.dimension() == p.total_dimension());
      for (const auto& e : x.entries()) CHECK(e.index < p.total_dimension());
    }
    // Refitting the same documents is deterministic.
    const FeaturePipeline again = fitted(configs[trial % 5], docs, 1 + trial % 2);
    for (std::size_t b = 0; b < p.blocks().size(); ++b) {
      CHECK(*p.vocabulary(b) == *again.vocabulary(b));
    }
    for (const auto& d : docs) CHECK(p.transform(d) == again.transform(d));
  }
}

}  // namespace
}  // namespace aggrid
