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

// Model file layout: a `aggrid-model<TAB>VERSION` line followed by sections
// `[meta]`, `[train]`, `[preprocess]`, `[resources]`, `[pipeline]`,
// `[vocab:BLOCK]` per lexical block, `[weights:CLASS]` per label and a closing
// `[end]`. Every line is tab-separated with escaped fields.

#include <fstream>
#include <map>
#include <sstream>

#include "aggrid/error.h"
#include "aggrid/model.h"
#include "aggrid/text_util.h"

namespace aggrid {
namespace {

constexpr std::string_view kMagic = "aggrid-model";

class Writer {
 public:
  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((append(fields, first)), ...);
    out_.push_back('\n');
  }
  void section(std::string_view name) {
    out_ += "[";
    out_ += name;
    out_ += "]\n";
  }
  std::string take() { return std::move(out_); }

 private:
  void sep(bool& first) {
    if (!first) out_.push_back('\t');
    first = false;
  }
  void append(std::string_view s, bool& first) {
    sep(first);
    out_ += escape_field(s);
  }
  void append(const std::string& s, bool& first) { append(std::string_view(s), first); }
  void append(const char* s, bool& first) { append(std::string_view(s), first); }
  void append(double v, bool& first) {
    sep(first);
    out_ += format_double(v);
  }
  void append(bool v, bool& first) {
    sep(first);
    out_ += v ? "1" : "0";
  }
  template <typename T>
    requires std::is_integral_v<T>
  void append(T v, bool& first) {
    sep(first);
    out_ += std::to_string(v);
  }

  std::string out_;
};

using Rows = std::vector<std::vector<std::string>>;

struct Sections {
  std::vector<std::string> order;
  std::map<std::string, Rows> rows;

  const Rows& get(const std::string& name) const {
    const auto it = rows.find(name);
    if (it == rows.end()) {
      throw ResourceError("truncated model file: missing section [" + name + "]");
    }
    return it->second;
  }
};

std::string_view kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::kWordNgram: return "word_ngram";
    case BlockKind::kCharNgram: return "char_ngram";
    case BlockKind::kSkipGram: return "skip_gram";
    case BlockKind::kBinaryWordNgram: return "binary_word_ngram";
    case BlockKind::kEmbedding: return "embedding";
    case BlockKind::kSentiment: return "sentiment";
    case BlockKind::kLiwc: return "liwc";
    case BlockKind::kGender: return "gender";
  }
  return "?";
}

BlockKind parse_kind(const std::string& s) {
  for (BlockKind k : {BlockKind::kWordNgram, BlockKind::kCharNgram, BlockKind::kSkipGram,
                      BlockKind::kBinaryWordNgram, BlockKind::kEmbedding, BlockKind::kSentiment,
                      BlockKind::kLiwc, BlockKind::kGender}) {
    if (kind_name(k) == s) return k;
  }
  throw ResourceError("model file: unknown block kind '" + s + "'");
}

// Key/value lookup within a section of `key<TAB>value...` rows.
class KeyValues {
 public:
  KeyValues(const Rows& rows, std::string section) : section_(std::move(section)) {
    for (const auto& r : rows) {
      if (!r.empty()) map_.try_emplace(r[0], r);
    }
  }
  const std::vector<std::string>& row(const std::string& key, std::size_t min_fields = 2) const {
    const auto it = map_.find(key);
    if (it == map_.end() || it->second.size() < min_fields) {
      throw ResourceError("model file: section [" + section_ + "] lacks '" + key + "'");
    }
    return it->second;
  }
  bool has(const std::string& key) const { return map_.count(key) > 0; }
  const std::string& str(const std::string& key) const { return row(key)[1]; }
  double num(const std::string& key) const { return to_double(str(key), key); }
  std::uint64_t count(const std::string& key) const { return to_count(str(key), key); }
  bool flag(const std::string& key) const { return str(key) == "1"; }
  ResourceRef ref(const std::string& key) const {
    const auto& r = row(key);
    ResourceRef ref;
    ref.path = r.size() > 1 ? r[1] : "";
    ref.checksum = r.size() > 2 ? r[2] : "";
    return ref;
  }

  double to_double(const std::string& s, const std::string& what) const {
    try {
      return parse_double(s);
    } catch (const DataError&) {
      throw ResourceError("model file: invalid number for '" + what + "' in [" + section_ + "]");
    }
  }
  std::uint64_t to_count(const std::string& s, const std::string& what) const {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ResourceError("model file: invalid integer for '" + what + "' in [" + section_ + "]");
  }

 private:
  std::string section_;
  std::map<std::string, std::vector<std::string>> map_;
};

Sections split_sections(std::string_view text) {
  Sections s;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  bool ended = false;
  std::string current;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header) {
      const auto f = split(line, '\t');
      if (f.size() != 2 || f[0] != kMagic) throw ResourceError("not an aggrid model file");
      if (f[1] != std::to_string(kModelFormatVersion)) {
        throw ResourceError("model format version mismatch: file has " + f[1] +
                            ", expected " + std::to_string(kModelFormatVersion));
      }
      header = true;
      continue;
    }
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      current = line.substr(1, line.size() - 2);
      if (current == "end") {
        ended = true;
        break;
      }
      s.order.push_back(current);
      s.rows[current];
      continue;
    }
    if (current.empty()) throw ResourceError("model file: data before first section");
    std::vector<std::string> fields;
    for (const auto& f : split(line, '\t')) fields.push_back(unescape_field(f));
    s.rows[current].push_back(std::move(fields));
  }
  if (!header) throw ResourceError("empty model file");
  if (!ended) {
    throw ResourceError("truncated model file: missing [end] after section [" +
                        (s.order.empty() ? std::string("header") : s.order.back()) + "]");
  }
  return s;
}

void write_ref(Writer& w, const char* key, const ResourceRef& ref) {
  w.row(key, ref.path, ref.checksum);
}

}  // namespace

std::string serialize_model(const OvRModel& model) {
  Writer w;
  w.row(kMagic, kModelFormatVersion);

  w.section("meta");
  w.row("language", language_name(model.preprocess.language));
  w.row("dimension", model.dimension());
  w.row("single_class", model.single_class);
  for (Label l : kAllLabels) {
    w.row("class_count", label_name(l), model.class_counts[label_index(l)]);
  }

  const TrainConfig& tc = model.train_config;
  w.section("train");
  w.row("reg_lambda", tc.reg_lambda);
  w.row("learning_rate", tc.learning_rate);
  w.row("max_iters", tc.max_iters);
  w.row("grad_tol", tc.grad_tol);
  w.row("seed", tc.seed);

  const PreprocessSettings& pp = model.preprocess;
  w.section("preprocess");
  w.row("lowercase", pp.clean.lowercase);
  w.row("strip_urls", pp.clean.strip_urls);
  w.row("strip_emails", pp.clean.strip_emails);
  w.row("strip_numbers", pp.clean.strip_numbers);
  w.row("minor_stemming", pp.clean.minor_stemming);
  for (const auto& [k, v] : pp.clean.expansions) w.row("expansion", k, v);
  w.row("transliterate", pp.transliterate);
  w.row("translit_table", kTranslitTableVersion);
  w.row("spell_correct", pp.spell_correct);
  write_ref(w, "spell_dictionary", pp.spell_dictionary);

  w.section("pipeline");
  if (model.pipeline) {
    const auto& pipe = *model.pipeline;
    const ResourceSettings& rs = pipe.resources().settings;
    w.row("n_train_docs", pipe.n_train_docs());
    for (const auto& b : pipe.blocks()) {
      w.row("block", b.name, kind_name(b.kind), b.n, b.k, b.min_df);
    }
    w.section("resources");
    write_ref(w, "embeddings", rs.embeddings);
    w.row("normalize_embeddings", rs.normalize_embeddings);
    write_ref(w, "liwc_lexicon", rs.liwc_lexicon);
    write_ref(w, "gender_lexicon", rs.gender_lexicon);
    w.row("sentiment_sidecar", rs.sentiment_sidecar);
    write_ref(w, "sentiment_positive", rs.sentiment_positive);
    write_ref(w, "sentiment_negative", rs.sentiment_negative);
    w.row("sentiment_mild_share", rs.sentiment_mild_share);
    for (std::size_t i = 0; i < pipe.blocks().size(); ++i) {
      const auto& vocab = pipe.vocabulary(i);
      if (!vocab) continue;
      w.section("vocab:" + pipe.blocks()[i].name);
      w.row("n_documents", vocab->n_documents());
      w.row("size", vocab->size());
      for (std::uint32_t t = 0; t < vocab->size(); ++t) {
        w.row(vocab->term(t), vocab->document_frequency(t));
      }
    }
  }

  for (Label l : kAllLabels) {
    const BinaryLogReg& c = model.classifier(l);
    w.section("weights:" + std::string(label_name(l)));
    w.row("bias", c.bias);
    w.row("reg_lambda", c.reg_lambda);
    w.row("iterations", c.stats.iterations);
    w.row("final_loss", c.stats.final_loss);
    w.row("final_grad_norm", c.stats.final_grad_norm);
    w.row("converged", c.stats.converged);
    std::size_t nnz = 0;
    for (double v : c.weights) nnz += v != 0.0 ? 1 : 0;
    w.row("nnz", nnz);
    for (std::size_t j = 0; j < c.weights.size(); ++j) {
      if (c.weights[j] != 0.0) w.row(j, c.weights[j]);
    }
  }
  w.section("end");
  return w.take();
}

void save_model(const OvRModel& model, const std::filesystem::path& path) {
  const std::string text = serialize_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write model " + path.string());
  out << text;
  if (!out) throw ResourceError("write failed for model " + path.string());
}

OvRModel parse_model(std::string_view text, const std::string& sentiment_sidecar) {
  const Sections sections = split_sections(text);
  OvRModel model;

  const KeyValues meta(sections.get("meta"), "meta");
  const std::size_t dim = meta.count("dimension");
  model.single_class = meta.flag("single_class");
  for (const auto& r : sections.get("meta")) {
    if (r.size() == 3 && r[0] == "class_count") {
      model.class_counts[label_index(parse_label(r[1]))] = meta.to_count(r[2], "class_count");
    }
  }

  const KeyValues train(sections.get("train"), "train");
  model.train_config.reg_lambda = train.num("reg_lambda");
  model.train_config.learning_rate = train.num("learning_rate");
  model.train_config.max_iters = static_cast<int>(train.count("max_iters"));
  model.train_config.grad_tol = train.num("grad_tol");
  model.train_config.seed = train.count("seed");

  const KeyValues pre(sections.get("preprocess"), "preprocess");
  PreprocessSettings& pp = model.preprocess;
  pp.language = parse_language(meta.str("language"));
  pp.clean.lowercase = pre.flag("lowercase");
  pp.clean.strip_urls = pre.flag("strip_urls");
  pp.clean.strip_emails = pre.flag("strip_emails");
  pp.clean.strip_numbers = pre.flag("strip_numbers");
  pp.clean.minor_stemming = pre.flag("minor_stemming");
  pp.clean.expansions.clear();
  for (const auto& r : sections.get("preprocess")) {
    if (r.size() == 3 && r[0] == "expansion") pp.clean.expansions[r[1]] = r[2];
  }
  pp.transliterate = pre.flag("transliterate");
  if (pre.str("translit_table") != kTranslitTableVersion) {
    throw ResourceError("model was built with transliteration table " +
                        pre.str("translit_table") + ", this build has " +
                        std::string(kTranslitTableVersion));
  }
  pp.spell_correct = pre.flag("spell_correct");
  pp.spell_dictionary = pre.ref("spell_dictionary");
  if (pp.spell_correct) verify_resource(pp.spell_dictionary, "spell dictionary");

  const Rows& pipe_rows = sections.get("pipeline");
  std::vector<FeatureBlockSpec> blocks;
  for (const auto& r : pipe_rows) {
    if (r.empty() || r[0] != "block") continue;
    if (r.size() != 6) throw ResourceError("model file: malformed block row in [pipeline]");
    FeatureBlockSpec spec;
    spec.name = r[1];
    spec.kind = parse_kind(r[2]);
    spec.n = static_cast<int>(meta.to_count(r[3], "block n"));
    spec.k = static_cast<int>(meta.to_count(r[4], "block k"));
    spec.min_df = meta.to_count(r[5], "block min_df");
    blocks.push_back(std::move(spec));
  }
  if (!blocks.empty()) {
    const KeyValues pipe(pipe_rows, "pipeline");
    const KeyValues res(sections.get("resources"), "resources");
    ResourceSettings rs;
    rs.embeddings = res.ref("embeddings");
    rs.normalize_embeddings = res.flag("normalize_embeddings");
    rs.liwc_lexicon = res.ref("liwc_lexicon");
    rs.gender_lexicon = res.ref("gender_lexicon");
    rs.sentiment_sidecar = sentiment_sidecar;
    if (rs.sentiment_sidecar.empty()) rs.sentiment_sidecar = res.ref("sentiment_sidecar").path;
    rs.sentiment_positive = res.ref("sentiment_positive");
    rs.sentiment_negative = res.ref("sentiment_negative");
    rs.sentiment_mild_share = res.num("sentiment_mild_share");

    std::vector<std::optional<Vocabulary>> vocabs(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (!blocks[i].lexical()) continue;
      const std::string name = "vocab:" + blocks[i].name;
      const Rows& rows = sections.get(name);
      const KeyValues kv(rows, name);
      const std::size_t size = kv.count("size");
      const std::size_t n_docs = kv.count("n_documents");
      if (rows.size() < 2 || rows.size() - 2 != size) {
        throw ResourceError("truncated model file: section [" + name + "] declares " +
                            std::to_string(size) + " terms, found " +
                            std::to_string(rows.size() < 2 ? 0 : rows.size() - 2));
      }
      std::vector<std::string> terms;
      std::vector<std::uint32_t> dfs;
      terms.reserve(size);
      dfs.reserve(size);
      for (std::size_t t = 2; t < rows.size(); ++t) {
        if (rows[t].size() != 2) throw ResourceError("model file: malformed row in [" + name + "]");
        terms.push_back(rows[t][0]);
        dfs.push_back(static_cast<std::uint32_t>(kv.to_count(rows[t][1], "df")));
      }
      vocabs[i] = Vocabulary(std::move(terms), std::move(dfs), n_docs);
    }
    auto pipeline = std::make_shared<FeaturePipeline>(blocks, load_resources(rs, blocks));
    pipeline->restore(std::move(vocabs), pipe.count("n_train_docs"));
    if (pipeline->total_dimension() != dim) {
      throw ResourceError("model file: pipeline dimension " +
                          std::to_string(pipeline->total_dimension()) +
                          " differs from recorded dimension " + std::to_string(dim));
    }
    model.pipeline = std::move(pipeline);
  }

  for (Label l : kAllLabels) {
    const std::string name = "weights:" + std::string(label_name(l));
    const Rows& rows = sections.get(name);
    const KeyValues kv(rows, name);
    BinaryLogReg& c = model.classifiers[label_index(l)];
    c.bias = kv.num("bias");
    c.reg_lambda = kv.num("reg_lambda");
    c.stats.iterations = static_cast<int>(kv.count("iterations"));
    c.stats.final_loss = kv.num("final_loss");
    c.stats.final_grad_norm = kv.num("final_grad_norm");
    c.stats.converged = kv.flag("converged");
    const std::size_t nnz = kv.count("nnz");
    constexpr std::size_t kHeaderRows = 7;
    if (rows.size() < kHeaderRows || rows.size() - kHeaderRows != nnz) {
      throw ResourceError("truncated model file: section [" + name + "] declares " +
                          std::to_string(nnz) + " weights, found " +
                          std::to_string(rows.size() < kHeaderRows ? 0 : rows.size() - kHeaderRows));
    }
    c.weights.assign(dim, 0.0);
    for (std::size_t r = kHeaderRows; r < rows.size(); ++r) {
      if (rows[r].size() != 2) throw ResourceError("model file: malformed row in [" + name + "]");
      const std::size_t j = kv.to_count(rows[r][0], "index");
      if (j >= dim) throw ResourceError("model file: weight index out of range in [" + name + "]");
      c.weights[j] = kv.to_double(rows[r][1], "weight");
    }
  }
  return model;
}

OvRModel load_model(const std::filesystem::path& path) { return load_model(path, {}); }

OvRModel load_model(const std::filesystem::path& path, const std::string& sentiment_sidecar) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open model " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_model(text, sentiment_sidecar);
}

}  // namespace aggrid
