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

// Acceptance checks. Prints one line per criterion: PASS, FAIL, SKIP, or FLAG
// for the dataset comparison, which reports without failing.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <iostream>
#include <sstream>

#include "aggrid/cli.h"
#include "aggrid/evaluate.h"
#include "aggrid/featurize.h"
#include "aggrid/model.h"
#include "aggrid/text_util.h"
#include "oracles.h"
#include "synthetic.h"
#include "test_util.h"

namespace aggrid {
namespace {

using Clock = std::chrono::steady_clock;
using testing::TempDir;
using testing::uniform_index;
using testing::uniform_real;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o;
  std::ostringstream e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  if (code != 0) std::cerr << e.str();
  return code;
}

// Weighted F1 of a predictions file against gold, at full precision.
double score(const Corpus& gold, const std::filesystem::path& predictions) {
  std::map<std::string, Label> by_id;
  for (const auto& [id, label] : load_predictions(predictions)) by_id[id] = label;
  std::vector<Label> g;
  std::vector<Label> p;
  for (const auto& doc : gold.documents) {
    g.push_back(*doc.gold);
    p.push_back(by_id.at(doc.id));
  }
  return weighted_f1(confusion(g, p));
}

void synthetic_end_to_end() {
  TempDir dir;
  const Corpus all = testing::synthetic_corpus({});
  Corpus train;
  Corpus held_out;
  // Classes interleave, so the last 90 documents hold 30 per class.
  for (std::size_t i = 0; i < all.documents.size(); ++i) {
    (i < 210 ? train : held_out).documents.push_back(all.documents[i]);
  }
  write_corpus(train, dir / "train.tsv");
  write_corpus(held_out, dir / "test.tsv");
  const auto start = Clock::now();
  const bool ran =
      cli({"--quiet", "train", "--preset", "english:U+C3+C4+C5", "--train",
           (dir / "train.tsv").string(), "--model", (dir / "m.txt").string()}) == 0 &&
      cli({"--quiet", "predict", "--model", (dir / "m.txt").string(), "--corpus",
           (dir / "test.tsv").string(), "--out", (dir / "p.tsv").string()}) == 0;
  const double elapsed = seconds_since(start);
  if (!ran) {
    report(false, "synthetic_end_to_end", "train or predict failed");
    return;
  }
  const double f1 = score(held_out, dir / "p.tsv");
  report(f1 >= 0.95 && elapsed < 30.0, "synthetic_end_to_end",
         "U+C3+C4+C5 weighted F1 " + fixed(f1, 4) + " on 90 held-out documents in " +
             fixed(elapsed, 2) + " s (need >= 0.95, < 30 s)");
}

void gradient_check() {
  std::mt19937_64 rng(20180820);
  const double eps = 1e-5;
  double worst = 0.0;
  const auto start = Clock::now();
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + uniform_index(rng, 10);
    const std::size_t m = 1 + uniform_index(rng, 20);
    std::vector<SparseVector> X;
    std::vector<int> y;
    for (std::size_t i = 0; i < m; ++i) {
      X.push_back(testing::random_sparse(rng, dim, 0.6, 2.0));
      y.push_back(static_cast<int>(uniform_index(rng, 2)));
    }
    std::vector<double> w(dim);
    for (auto& v : w) v = uniform_real(rng, -1, 1);
    const double b = uniform_real(rng, -1, 1);
    const double lambda = uniform_real(rng, 0, 2);
    const Objective obj = logistic_objective(X, y, w, b, lambda);
    for (std::size_t j = 0; j <= dim; ++j) {
      std::vector<double> wp = w;
      std::vector<double> wm = w;
      double bp = b;
      double bm = b;
      if (j < dim) {
        wp[j] += eps;
        wm[j] -= eps;
      } else {
        bp += eps;
        bm -= eps;
      }
      const double numeric = (logistic_objective(X, y, wp, bp, lambda).loss -
                              logistic_objective(X, y, wm, bm, lambda).loss) /
                             (2 * eps);
      const double analytic = j < dim ? obj.grad_w[j] : obj.grad_b;
      const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-3});
      worst = std::max(worst, std::abs(analytic - numeric) / scale);
    }
  }
  const double elapsed = seconds_since(start);
  report(worst <= 1e-4 && elapsed < 5.0, "gradient_check",
         "max relative error " + format_double(worst) + " over 50 problems in " +
             fixed(elapsed, 3) + " s (need <= 1e-4, < 5 s)");
}

void metric_oracle() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 200);
    std::vector<Label> gold(n);
    std::vector<Label> pred(n);
    for (auto& l : gold) l = testing::random_label(rng);
    for (auto& l : pred) l = testing::random_label(rng);
    worst = std::max(worst, std::abs(weighted_f1(confusion(gold, pred)) -
                                     testing::reference_weighted_f1(gold, pred)));
  }
  report(worst <= 1e-12, "metric_oracle",
         "max |delta| " + format_double(worst) + " over 1000 label lists (need <= 1e-12)");
}

void skip_gram_oracle() {
  // Every list of length <= 8 over a three-token alphabet, which covers
  // repeats as well as all-distinct prefixes.
  std::size_t lists = 0;
  std::size_t mismatches = 0;
  for (std::size_t len = 0; len <= 8; ++len) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
      testing::Strings tokens;
      for (std::size_t i = 0, c = code; i < len; ++i, c /= 3) {
        tokens.push_back(std::string(1, static_cast<char>('a' + c % 3)));
      }
      for (int n : {2, 3}) {
        mismatches += skip_grams(tokens, 2, n) != testing::brute_skip_grams(tokens, 2, n);
      }
      ++lists;
    }
  }
  // Distinct tokens up to length 8.
  for (std::size_t len = 0; len <= 8; ++len) {
    testing::Strings tokens;
    for (std::size_t i = 0; i < len; ++i) tokens.push_back("w" + std::to_string(i));
    for (int n : {2, 3}) {
      mismatches += skip_grams(tokens, 2, n) != testing::brute_skip_grams(tokens, 2, n);
    }
    ++lists;
  }
  report(mismatches == 0, "skip_gram_oracle",
         std::to_string(mismatches) + " mismatches over " + std::to_string(lists) +
             " token lists, k=2, n in {2,3}");
}

void tfidf_oracle() {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  bool shape_ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<testing::Strings> docs(20);
    for (auto& d : docs) d = testing::random_tokens(rng, 15, 10);
    const std::size_t min_df = 1 + uniform_index(rng, 3);
    const Vocabulary vocab = fit_vocabulary(docs, min_df);
    testing::Strings terms;
    const auto dense = testing::dense_tfidf(docs, docs, min_df, terms);
    shape_ok = shape_ok && vocab.size() == terms.size();
    for (std::size_t i = 0; i < docs.size() && shape_ok; ++i) {
      const auto got = tfidf_transform(docs[i], vocab).to_dense();
      shape_ok = got.size() == dense[i].size();
      for (std::size_t j = 0; j < got.size() && shape_ok; ++j) {
        worst = std::max(worst, std::abs(got[j] - dense[i][j]));
      }
    }
  }
  report(shape_ok && worst <= 1e-9, "tfidf_oracle",
         "max |delta| " + format_double(worst) + " over 200 corpora of 20 documents" +
             (shape_ok ? "" : ", vocabulary shape mismatch") + " (need <= 1e-9)");
}

void random_baseline_check() {
  std::vector<Label> gold;
  for (int i = 0; i < 1000; ++i) gold.insert(gold.end(), kAllLabels.begin(), kAllLabels.end());
  const double f1 = random_baseline(gold, 42, 10000);
  report(std::abs(f1 - 1.0 / 3) <= 0.01, "random_baseline",
         "mean weighted F1 " + fixed(f1, 4) + " on balanced gold n=3000, 10000 trials " +
             "(need 1/3 +- 0.01)");
}

void persistence_check() {
  TempDir dir;
  const Corpus corpus = testing::synthetic_corpus({.docs_per_class = 30});
  write_corpus(corpus, dir / "train.tsv");
  if (cli({"--quiet", "train", "--preset", "english:U+C3+C4+C5", "--train",
           (dir / "train.tsv").string(), "--model", (dir / "m.txt").string()}) != 0) {
    report(false, "persistence", "training failed");
    return;
  }
  const OvRModel first = load_model(dir / "m.txt");
  save_model(first, dir / "again.txt");
  const OvRModel second = load_model(dir / "again.txt");
  std::mt19937_64 rng(5);
  std::size_t differing = 0;
  for (int i = 0; i < 100; ++i) {
    const SparseVector x = testing::random_sparse(rng, first.dimension(), 0.05, 2.0);
    differing += predict_proba(first, x) != predict_proba(second, x);
  }
  report(differing == 0, "persistence",
         std::to_string(differing) + " of 100 random vectors differ after save/load");
}

void determinism_check() {
  TempDir dir;
  const Corpus corpus = testing::synthetic_corpus({.docs_per_class = 40, .seed = 99});
  write_corpus(corpus, dir / "train.tsv");
  testing::write_file(dir / "run.cfg", "language = english\nblocks = U,B,T,C3,C4,C5\n");
  // Separate processes, so nothing is shared between the runs.
  int failed_runs = 0;
  for (const char* name : {"a.txt", "b.txt"}) {
    const std::string cmd = std::string("\"") + AGGRID_CLI_PATH + "\" --quiet --seed 17 train" +
                            " --config \"" + (dir / "run.cfg").string() + "\" --train \"" +
                            (dir / "train.tsv").string() + "\" --model \"" +
                            (dir / name).string() + "\"";
    failed_runs += std::system(cmd.c_str()) != 0;
  }
  if (failed_runs > 0) {
    report(false, "determinism", "train run failed");
    return;
  }
  const bool same = testing::read_file(dir / "a.txt") == testing::read_file(dir / "b.txt");
  report(same, "determinism",
         std::string("two train runs ") + (same ? "wrote identical" : "wrote different") +
             " model files (" + file_checksum(dir / "a.txt") + ")");
}

std::optional<std::filesystem::path> find_split(const std::filesystem::path& root,
                                                const std::string& stem) {
  for (const char* ext : {".tsv", ".csv"}) {
    const auto p = root / (stem + ext);
    if (std::filesystem::exists(p)) return p;
  }
  return std::nullopt;
}

// Validation F1 on user-supplied shared-task data. Outside the tolerance is
// flagged for investigation, not failed.
void dataset_check(const std::string& lang, const std::string& row, double reference,
                   const std::vector<std::string>& extra) {
  const std::string name = "dataset_" + lang;
  const char* root = std::getenv("AGGRID_TRAC_DIR");
  if (root == nullptr) {
    std::cout << "SKIP " << name << ": AGGRID_TRAC_DIR not set" << std::endl;
    return;
  }
  const auto train = find_split(root, "agr_" + lang + "_train");
  const auto dev = find_split(root, "agr_" + lang + "_dev");
  if (!train || !dev) {
    std::cout << "SKIP " << name << ": agr_" << lang << "_{train,dev}.{tsv,csv} not found in "
              << root << std::endl;
    return;
  }
  TempDir dir;
  std::vector<std::string> args = {"--quiet", "--format",
                                   train->extension() == ".csv" ? "csv" : "tsv",
                                   "train",   "--preset", (lang == "en" ? "english:" : "hindi:") + row,
                                   "--train", train->string(), "--validation", dev->string(),
                                   "--model", (dir / "m.txt").string()};
  args.insert(args.end(), extra.begin(), extra.end());
  std::string out;
  if (cli(args, &out) != 0) {
    std::cout << "FLAG " << name << ": training failed" << std::endl;
    return;
  }
  const double f1 = parse_double(trim(out.substr(out.find('\t') + 1)));
  const bool within = std::abs(f1 - reference) <= 0.03;
  std::cout << (within ? "PASS " : "FLAG ") << name << ": " << row << " validation weighted F1 "
            << fixed(f1, 4) << ", reference " << fixed(reference, 4) << " (tolerance 0.03)"
            << std::endl;
}

}  // namespace
}  // namespace aggrid

int main() {
  using namespace aggrid;
  const std::vector<std::pair<const char*, std::function<void()>>> checks = {
      {"synthetic_end_to_end", synthetic_end_to_end},
      {"gradient_check", gradient_check},
      {"metric_oracle", metric_oracle},
      {"skip_gram_oracle", skip_gram_oracle},
      {"tfidf_oracle", tfidf_oracle},
      {"random_baseline", random_baseline_check},
      {"persistence", persistence_check},
      {"determinism", determinism_check},
  };
  for (const auto& [name, check] : checks) {
    try {
      check();
    } catch (const std::exception& e) {
      report(false, name, std::string("threw: ") + e.what());
    }
  }
  try {
    dataset_check("hi", "U+C3+C4+C5", 0.6267, {});
    std::vector<std::string> extra;
    if (const char* emb = std::getenv("AGGRID_TRAC_EMBEDDINGS")) {
      extra = {"--set", std::string("embeddings=") + emb};
    }
    dataset_check("en", "BU+U+C4+C5+W2V", 0.5875, extra);
  } catch (const std::exception& e) {
    std::cout << "FLAG dataset: " << e.what() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
