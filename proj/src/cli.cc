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

#include "aggrid/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "aggrid/error.h"
#include "aggrid/evaluate.h"
#include "aggrid/preprocess.h"
#include "aggrid/text_util.h"

namespace aggrid {
namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  const std::string s = ascii_lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw UsageError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    return parse_double(v);
  } catch (const DataError&) {
    throw UsageError("config key '" + key + "' expects a number, got '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used == v.size() && !v.empty() && v.front() != '-') return n;
  } catch (const std::exception&) {
  }
  throw UsageError("config key '" + key + "' expects a non-negative integer, got '" + v + "'");
}

std::string resolve(const std::filesystem::path& base, const std::string& v) {
  if (v.empty()) return v;
  std::filesystem::path p(v);
  if (p.is_relative()) p = base / p;
  return std::filesystem::absolute(p).lexically_normal().string();
}

struct Logger {
  std::ostream& err;
  bool quiet;
  void operator()(const std::string& msg) const {
    if (!quiet) err << "[aggrid] " << msg << '\n';
  }
};

const std::vector<std::string>& table_rows(Language lang) {
  static const std::vector<std::string> kEnglish = {
      "U",   "B", "T",    "C3", "C4", "C5", "W2V", "S", "LIWC", "GP", "BU+U+C4+C5+W2V",
      "C3+C4+C5", "U+C3+C4+C5"};
  static const std::vector<std::string> kHindi = {"U",  "B",        "T",         "C3",
                                                  "C4", "C5",       "C3+C4+C5",  "U+C3+C4+C5"};
  return lang == Language::kHindi ? kHindi : kEnglish;
}

struct TrainOptions {
  std::string config;
  std::string preset;
  std::vector<std::string> overrides;
  std::string train;
  std::string validation;
  std::string model;
  std::string report_dir;
  bool merge_validation = false;
  std::size_t top_k = 10;
};

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

RunConfig resolve_config(const TrainOptions& opt, const std::optional<std::uint64_t>& seed) {
  if (opt.config.empty() == opt.preset.empty()) {
    throw UsageError("train needs exactly one of --config or --preset");
  }
  std::string text;
  std::filesystem::path base = std::filesystem::current_path();
  if (!opt.config.empty()) {
    text = read_text_file(opt.config);
    base = std::filesystem::absolute(opt.config).parent_path();
  } else {
    text = preset_config_text(opt.preset);
  }
  for (const auto& o : opt.overrides) text = apply_override(std::move(text), o);
  RunConfig rc = parse_run_config(text, base);
  if (seed) rc.train.seed = *seed;
  if (opt.merge_validation) rc.merge_validation = true;
  rc.validate();
  return rc;
}

int cmd_build_dict(const std::string& corpus_path, const std::string& out_path,
                   Language language, CorpusFormat format, const Logger& log,
                   std::ostream& out) {
  PreprocessSettings settings = PreprocessSettings::defaults_for(language);
  settings.spell_correct = false;
  Preprocessor pre(settings);
  const Corpus corpus = load_corpus(corpus_path, false, language, format);
  SpellDictionary dict;
  for (const auto& doc : corpus.documents) {
    for (const auto& tok : tokenize(pre.normalize(doc.text))) {
      const auto cps = utf8_decode(tok);
      if (std::any_of(cps.begin(), cps.end(), [](char32_t c) { return is_letter(c); })) {
        dict.add(tok);
      }
    }
  }
  save_spell_dictionary(dict, out_path);
  log("dictionary: " + std::to_string(dict.size()) + " entries from " +
      std::to_string(corpus.size()) + " documents");
  out << out_path << '\n';
  return 0;
}

std::array<std::vector<FeatureWeight>, kNumLabels> all_top_features(const OvRModel& model,
                                                                    std::size_t k) {
  std::array<std::vector<FeatureWeight>, kNumLabels> top;
  for (Label l : kAllLabels) top[label_index(l)] = top_features(model, l, k);
  return top;
}

std::vector<Label> predict_corpus(const OvRModel& model, const Corpus& corpus) {
  if (!model.pipeline) throw ResourceError("model has no feature pipeline");
  Preprocessor pre(model.preprocess);
  std::vector<Label> out;
  out.reserve(corpus.size());
  for (const auto& doc : corpus.documents) {
    out.push_back(predict(model, model.pipeline->transform(pre.prepare(doc))));
  }
  return out;
}

int cmd_train(const TrainOptions& opt, const std::optional<std::uint64_t>& seed,
              CorpusFormat format, const Logger& log, std::ostream& out) {
  if (opt.train.empty() || opt.model.empty()) throw UsageError("train needs --train and --model");
  if (opt.merge_validation && opt.validation.empty()) {
    throw UsageError("--merge-validation needs --validation");
  }
  const RunConfig rc = resolve_config(opt, seed);

  // Every referenced resource is loaded before any corpus work.
  PipelineResources resources = load_resources(rc.resources, rc.blocks);
  Preprocessor pre(rc.preprocess);

  Corpus train = load_corpus(opt.train, true, rc.language, format);
  std::optional<Corpus> valid;
  if (!opt.validation.empty()) valid = load_corpus(opt.validation, true, rc.language, format);
  const bool merge = rc.merge_validation && valid.has_value();
  if (rc.merge_validation && !valid) throw UsageError("merge_validation needs --validation");
  if (merge) {
    std::unordered_set<std::string> ids;
    for (const auto& d : train.documents) ids.insert(d.id);
    for (const auto& d : valid->documents) {
      if (!ids.insert(d.id).second) {
        throw DataError("duplicate document id " + d.id + " across train and validation");
      }
      train.documents.push_back(d);
    }
    log("merged validation into training: " + std::to_string(train.size()) + " documents");
  }
  if (train.empty()) throw DataError("training corpus is empty");
  log("training documents: " + std::to_string(train.size()));

  const auto prepared = pre.prepare_all(train);
  if (pre.unknown_devanagari() > 0) {
    log("warning: " + std::to_string(pre.unknown_devanagari()) +
        " Devanagari code points had no transliteration");
  }
  auto pipeline = std::make_shared<FeaturePipeline>(rc.blocks, std::move(resources));
  pipeline->fit(prepared);
  log("feature dimension: " + std::to_string(pipeline->total_dimension()));
  const auto X = pipeline->transform_all(prepared);
  const auto labels = train.gold_labels();
  OvRModel model = train_ovr(X, labels, rc.train);
  if (model.single_class) log("warning: training data holds a single class");
  model.pipeline = pipeline;
  model.preprocess = pre.settings();
  for (Label l : kAllLabels) {
    const auto& st = model.classifier(l).stats;
    log(std::string(label_name(l)) + " classifier: " + std::to_string(st.iterations) +
        " iterations, loss " + format_double(st.final_loss) +
        (st.converged ? ", converged" : ", not converged"));
  }
  save_model(model, opt.model);
  log("model written to " + opt.model);

  if (valid && !merge) {
    const auto pred = predict_corpus(model, *valid);
    EvalReport report = make_report(confusion(valid->gold_labels(), pred));
    report.top_features = all_top_features(model, opt.top_k);
    out << "validation_weighted_f1\t" << format4(report.weighted_f1) << '\n';
    if (!opt.report_dir.empty()) render_report(report, opt.report_dir);
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& corpus_path,
                const std::string& out_path, const std::string& sidecar,
                const std::string& language, CorpusFormat format, const Logger& log) {
  const OvRModel model = load_model(model_path, sidecar);
  if (!language.empty() && parse_language(language) != model.preprocess.language) {
    throw DataError("corpus language " + language + " does not match model language " +
                    std::string(language_name(model.preprocess.language)));
  }
  const Corpus corpus = load_corpus(corpus_path, false, model.preprocess.language, format);
  const auto pred = predict_corpus(model, corpus);
  write_predictions(corpus, pred, out_path);
  log("wrote " + std::to_string(pred.size()) + " predictions to " + out_path);
  return 0;
}

struct BaselineSpec {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
};

BaselineSpec parse_baseline(const std::string& spec, std::uint64_t default_seed) {
  BaselineSpec b;
  b.seed = default_seed;
  std::string normalized = spec;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::string part;
  while (in >> part) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("--baseline expects trials=N seed=S");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "trials") {
      b.trials = parse_uint("trials", value);
    } else if (key == "seed") {
      b.seed = parse_uint("seed", value);
    } else {
      throw UsageError("unknown --baseline field '" + key + "'");
    }
  }
  if (b.trials < 1) throw UsageError("--baseline trials must be >= 1");
  return b;
}

int cmd_evaluate(const std::string& gold_path, const std::string& pred_path,
                 const std::string& out_dir, const std::optional<std::string>& baseline,
                 const std::string& baseline_mode, const std::string& model_path,
                 std::size_t top_k, std::uint64_t seed, CorpusFormat format, std::ostream& out) {
  const Corpus gold = load_corpus(gold_path, true, Language::kEnglish, format);
  const auto rows = load_predictions(pred_path);
  std::unordered_map<std::string, Label> by_id;
  for (const auto& [id, label] : rows) {
    if (!by_id.emplace(id, label).second) throw DataError("duplicate prediction for id " + id);
  }
  std::vector<Label> pred;
  pred.reserve(gold.size());
  for (const auto& d : gold.documents) {
    const auto it = by_id.find(d.id);
    if (it == by_id.end()) throw DataError("predictions missing id " + d.id);
    pred.push_back(it->second);
  }
  if (by_id.size() != gold.size()) {
    std::unordered_set<std::string> ids;
    for (const auto& d : gold.documents) ids.insert(d.id);
    for (const auto& [id, label] : rows) {
      if (ids.count(id) == 0) throw DataError("prediction for unknown id " + id);
    }
  }
  const auto gold_labels = gold.gold_labels();
  EvalReport report = make_report(confusion(gold_labels, pred));
  if (baseline) {
    const BaselineSpec b = parse_baseline(*baseline, seed);
    BaselineMode mode = BaselineMode::kUniform;
    if (baseline_mode == "prior") {
      mode = BaselineMode::kPrior;
    } else if (baseline_mode != "uniform") {
      throw UsageError("--baseline-mode must be uniform or prior");
    }
    report.baseline_weighted_f1 = random_baseline(gold_labels, b.seed, b.trials, mode);
  }
  if (!model_path.empty()) report.top_features = all_top_features(load_model(model_path), top_k);
  render_report(report, out_dir);
  out << "weighted_f1\t" << format4(report.weighted_f1) << '\n';
  if (report.baseline_weighted_f1) {
    out << "random_baseline_weighted_f1\t" << format4(*report.baseline_weighted_f1) << '\n';
  }
  return 0;
}

int cmd_inspect(const std::string& model_path, std::size_t k, bool long_form,
                std::ostream& out) {
  const OvRModel model = load_model(model_path);
  const auto top = all_top_features(model, k);
  if (!long_form) {
    out << render_top_features_tsv(top);
    return 0;
  }
  out << "class\trank\tfeature\tweight\n";
  for (Label l : kAllLabels) {
    const auto& col = top[label_index(l)];
    for (std::size_t r = 0; r < col.size(); ++r) {
      out << label_name(l) << '\t' << r + 1 << '\t' << escape_field(col[r].name) << '\t'
          << format_double(col[r].weight) << '\n';
    }
  }
  return 0;
}

int cmd_dump_translit(std::ostream& out) {
  out << "# " << kTranslitTableVersion << '\n';
  out << "codepoint\tchar\troman\tclass\n";
  for (const auto& e : translit_table()) {
    char cp[16];
    std::snprintf(cp, sizeof(cp), "U+%04X", static_cast<unsigned>(e.codepoint));
    std::string ch;
    utf8_append(ch, e.codepoint);
    out << cp << '\t' << ch << '\t' << e.roman << '\t' << translit_class_name(e.kind) << '\n';
  }
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  if (blocks.empty()) throw UsageError("config must name at least one block");
  for (const auto& b : blocks) {
    b.validate();
    if (language == Language::kHindi && !b.lexical()) {
      throw UsageError("block " + b.name + " is not available for Hindi");
    }
    switch (b.kind) {
      case BlockKind::kEmbedding:
        if (resources.embeddings.empty()) throw UsageError("W2V requires 'embeddings'");
        break;
      case BlockKind::kSentiment:
        if (resources.sentiment_sidecar.empty() &&
            (resources.sentiment_positive.empty() || resources.sentiment_negative.empty())) {
          throw UsageError(
              "S requires 'sentiment_sidecar' or both 'sentiment_positive' and "
              "'sentiment_negative'");
        }
        break;
      case BlockKind::kLiwc:
        if (resources.liwc_lexicon.empty()) throw UsageError("LIWC requires 'liwc_lexicon'");
        break;
      case BlockKind::kGender:
        if (resources.gender_lexicon.empty()) throw UsageError("GP requires 'gender_lexicon'");
        break;
      default:
        break;
    }
  }
  if (preprocess.spell_correct && preprocess.spell_dictionary.empty()) {
    throw UsageError("spell_correct requires 'spell_dictionary'");
  }
  train.validate();
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  // Last assignment wins, so overrides can simply be appended.
  std::map<std::string, std::string> kv;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!kv.count("language")) throw UsageError("config lacks 'language'");
  if (!kv.count("blocks")) throw UsageError("config lacks 'blocks'");

  RunConfig rc;
  rc.language = parse_language(kv["language"]);
  rc.preprocess = PreprocessSettings::defaults_for(rc.language);
  if (kv.count("min_df")) {
    rc.min_df = parse_uint("min_df", kv["min_df"]);
    if (rc.min_df < 1) throw UsageError("min_df must be >= 1");
  }
  rc.blocks = blocks_from_list(kv["blocks"], rc.min_df);

  for (const auto& [key, value] : kv) {
    if (key == "language" || key == "blocks" || key == "min_df") continue;
    CleanConfig& clean = rc.preprocess.clean;
    if (key == "lowercase") {
      clean.lowercase = parse_bool(key, value);
    } else if (key == "strip_urls") {
      clean.strip_urls = parse_bool(key, value);
    } else if (key == "strip_emails") {
      clean.strip_emails = parse_bool(key, value);
    } else if (key == "strip_numbers") {
      clean.strip_numbers = parse_bool(key, value);
    } else if (key == "stemming") {
      clean.minor_stemming = parse_bool(key, value);
    } else if (key == "expansions") {
      clean.expansions = parse_bool(key, value) ? default_expansions()
                                                : std::map<std::string, std::string>{};
    } else if (key == "transliterate") {
      rc.preprocess.transliterate = parse_bool(key, value);
    } else if (key == "spell_correct") {
      rc.preprocess.spell_correct = parse_bool(key, value);
    } else if (key == "spell_dictionary") {
      rc.preprocess.spell_dictionary.path = resolve(base_dir, value);
    } else if (key == "embeddings") {
      rc.resources.embeddings.path = resolve(base_dir, value);
    } else if (key == "normalize_embeddings") {
      rc.resources.normalize_embeddings = parse_bool(key, value);
    } else if (key == "liwc_lexicon") {
      rc.resources.liwc_lexicon.path = resolve(base_dir, value);
    } else if (key == "gender_lexicon") {
      rc.resources.gender_lexicon.path = resolve(base_dir, value);
    } else if (key == "sentiment_sidecar") {
      rc.resources.sentiment_sidecar = resolve(base_dir, value);
    } else if (key == "sentiment_positive") {
      rc.resources.sentiment_positive.path = resolve(base_dir, value);
    } else if (key == "sentiment_negative") {
      rc.resources.sentiment_negative.path = resolve(base_dir, value);
    } else if (key == "sentiment_mild_share") {
      rc.resources.sentiment_mild_share = parse_real(key, value);
    } else if (key == "reg_lambda") {
      rc.train.reg_lambda = parse_real(key, value);
    } else if (key == "learning_rate") {
      rc.train.learning_rate = parse_real(key, value);
    } else if (key == "max_iters") {
      rc.train.max_iters = static_cast<int>(parse_uint(key, value));
    } else if (key == "grad_tol") {
      rc.train.grad_tol = parse_real(key, value);
    } else if (key == "seed") {
      rc.train.seed = parse_uint(key, value);
    } else if (key == "merge_validation") {
      rc.merge_validation = parse_bool(key, value);
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const RunConfig rc =
      parse_run_config(read_text_file(path), std::filesystem::absolute(path).parent_path());
  rc.validate();
  return rc;
}

std::string apply_override(std::string text, std::string_view assignment) {
  if (assignment.find('=') == std::string_view::npos) {
    throw UsageError("override '" + std::string(assignment) + "' is not key=value");
  }
  if (!text.empty() && text.back() != '\n') text.push_back('\n');
  text += assignment;
  text.push_back('\n');
  return text;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (Language lang : {Language::kEnglish, Language::kHindi}) {
    for (const auto& row : table_rows(lang)) {
      names.push_back(std::string(language_name(lang)) + ":" + row);
    }
  }
  for (const char* s : {"english-system1", "english-system2", "english-system3",
                        "hindi-system1", "hindi-system2"}) {
    names.emplace_back(s);
  }
  return names;
}

std::string preset_config_text(std::string_view name) {
  const std::string n(name);
  const auto colon = n.find(':');
  if (colon != std::string::npos) {
    const Language lang = parse_language(n.substr(0, colon));
    const std::string row = n.substr(colon + 1);
    const auto& rows = table_rows(lang);
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) {
      throw UsageError("no preset '" + n + "'");
    }
    std::string blocks = row;
    std::replace(blocks.begin(), blocks.end(), '+', ',');
    return "language = " + std::string(language_name(lang)) + "\nblocks = " + blocks + "\n";
  }
  // English systems share the best validation feature set; system 1 also
  // trains on validation data and system 3 adds spell correction.
  if (n == "english-system1") {
    return "language = english\nblocks = BU,U,C4,C5,W2V\nmerge_validation = true\n";
  }
  if (n == "english-system2") return "language = english\nblocks = BU,U,C4,C5,W2V\n";
  if (n == "english-system3") {
    return "language = english\nblocks = BU,U,C4,C5,W2V\nspell_correct = true\n";
  }
  if (n == "hindi-system1") return "language = hindi\nblocks = U,C3,C4,C5\n";
  if (n == "hindi-system2") {
    return "language = hindi\nblocks = U,C3,C4,C5\nmerge_validation = true\n";
  }
  throw UsageError("no preset '" + n + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Aggression identification: train, predict and evaluate NAG/CAG/OAG classifiers",
               "aggrid"};
  app.require_subcommand(1);
  bool quiet = false;
  std::optional<std::uint64_t> seed;
  std::string format_name = "tsv";
  app.add_flag("--quiet", quiet, "Suppress progress logging");
  app.add_option("--seed", seed, "Seed recorded in the model and used by the random baseline");
  app.add_option("--format", format_name, "Corpus format: tsv or csv")
      ->check(CLI::IsMember({"tsv", "csv"}));

  auto* build = app.add_subcommand("build-dict", "Build a spell dictionary from a corpus");
  std::string bd_corpus;
  std::string bd_out;
  std::string bd_lang = "english";
  build->add_option("corpus", bd_corpus, "Corpus file")->required();
  build->add_option("out", bd_out, "Dictionary output file")->required();
  build->add_option("--language", bd_lang, "english or hindi");

  auto* train = app.add_subcommand("train", "Fit the feature pipeline and the classifier");
  TrainOptions topt;
  train->add_option("--config", topt.config, "Config file");
  train->add_option("--preset", topt.preset, "Built-in config name (see `presets`)");
  train->add_option("--set", topt.overrides, "Config override key=value");
  train->add_option("--train", topt.train, "Training corpus")->required();
  train->add_option("--validation", topt.validation, "Validation corpus");
  train->add_option("--model", topt.model, "Model output path")->required();
  train->add_option("--report-dir", topt.report_dir, "Validation report directory");
  train->add_option("--top-k", topt.top_k, "Top features per class in the report");
  train->add_flag("--merge-validation", topt.merge_validation,
                  "Train on training and validation data together");

  auto* predict_cmd = app.add_subcommand("predict", "Label a corpus with a trained model");
  std::string p_model;
  std::string p_corpus;
  std::string p_out;
  std::string p_sidecar;
  std::string p_lang;
  predict_cmd->add_option("--model", p_model, "Model file")->required();
  predict_cmd->add_option("--corpus", p_corpus, "Corpus to label")->required();
  predict_cmd->add_option("--out", p_out, "Prediction output file")->required();
  predict_cmd->add_option("--sentiment-sidecar", p_sidecar, "Sentiment sidecar for this corpus");
  predict_cmd->add_option("--language", p_lang, "Expected corpus language");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against gold labels");
  std::string e_gold;
  std::string e_pred;
  std::string e_out;
  std::optional<std::string> e_baseline;
  std::string e_mode = "uniform";
  std::string e_model;
  std::size_t e_k = 10;
  evaluate_cmd->add_option("--gold", e_gold, "Labelled corpus")->required();
  evaluate_cmd->add_option("--predictions", e_pred, "Prediction file")->required();
  evaluate_cmd->add_option("--out-dir", e_out, "Report directory")->required();
  evaluate_cmd->add_option("--baseline", e_baseline, "Random baseline, e.g. 'trials=1000 seed=7'");
  evaluate_cmd->add_option("--baseline-mode", e_mode, "uniform or prior");
  evaluate_cmd->add_option("--model", e_model, "Model whose top features join the report");
  evaluate_cmd->add_option("--top-k", e_k, "Top features per class");

  auto* inspect = app.add_subcommand("inspect", "List the top-weighted features per class");
  std::string i_model;
  std::size_t i_k = 10;
  bool i_long = false;
  inspect->add_option("--model", i_model, "Model file")->required();
  inspect->add_option("-k,--top-k", i_k, "Features per class");
  inspect->add_flag("--long", i_long, "One row per feature with its weight");

  auto* dump = app.add_subcommand("dump-translit-table", "Print the transliteration table");
  auto* presets = app.add_subcommand("presets", "List built-in configs");
  std::string show_preset;
  presets->add_option("name", show_preset, "Print one preset's config text");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kUsage);
  }

  const Logger log{err, quiet};
  try {
    const CorpusFormat format = parse_corpus_format(format_name);
    if (build->parsed()) {
      return cmd_build_dict(bd_corpus, bd_out, parse_language(bd_lang), format, log, out);
    }
    if (train->parsed()) return cmd_train(topt, seed, format, log, out);
    if (predict_cmd->parsed()) {
      return cmd_predict(p_model, p_corpus, p_out, p_sidecar, p_lang, format, log);
    }
    if (evaluate_cmd->parsed()) {
      return cmd_evaluate(e_gold, e_pred, e_out, e_baseline, e_mode, e_model, e_k,
                          seed.value_or(0), format, out);
    }
    if (inspect->parsed()) return cmd_inspect(i_model, i_k, i_long, out);
    if (dump->parsed()) return cmd_dump_translit(out);
    if (presets->parsed()) {
      if (!show_preset.empty()) {
        out << preset_config_text(show_preset);
      } else {
        for (const auto& n : preset_names()) out << n << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  }
  return static_cast<int>(ErrorKind::kUsage);
}

}  // namespace aggrid
