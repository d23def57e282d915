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
#include <random>
#include <sstream>

#include "aggrid/error.h"
#include "aggrid/evaluate.h"
#include "aggrid/text_util.h"
#include "oracles.h"
#include "test_util.h"

namespace aggrid {
namespace {

using testing::reference_weighted_f1;
using testing::read_file;
using testing::TempDir;
using testing::uniform_index;
using Labels = std::vector<Label>;

constexpr Label N = Label::kNag;
constexpr Label C = Label::kCag;
constexpr Label O = Label::kOag;

ConfusionMatrix from_counts(std::array<std::array<std::uint64_t, 3>, 3> counts) {
  ConfusionMatrix m;
  m.counts = counts;
  return m;
}

Labels random_labels(std::mt19937_64& rng, std::size_t n) {
  Labels out(n);
  for (auto& l : out) l = testing::random_label(rng);
  return out;
}

TEST_CASE("confusion") {
  const ConfusionMatrix m = confusion(Labels{N, N}, Labels{N, O});
  CHECK(m.counts[0] == std::array<std::uint64_t, 3>{1, 0, 1});
  CHECK(m.counts[1] == std::array<std::uint64_t, 3>{0, 0, 0});
  CHECK(m.counts[2] == std::array<std::uint64_t, 3>{0, 0, 0});

  const ConfusionMatrix d = confusion(Labels{N, C, O, O}, Labels{N, C, O, O});
  CHECK(d.at(N, N) == 1);
  CHECK(d.at(C, C) == 1);
  CHECK(d.at(O, O) == 2);
  CHECK(d.total() == 4);

  const ConfusionMatrix one = confusion(Labels{C}, Labels{N});
  CHECK(one.at(C, N) == 1);
  CHECK(one.total() == 1);

  CHECK_THROWS_AS(confusion(Labels{N}, Labels{N, C}), DataError);
  CHECK_THROWS_AS(confusion(Labels{}, Labels{}), DataError);
}

TEST_CASE("class_prf") {
  const ConfusionMatrix diag = from_counts({{{3, 0, 0}, {0, 2, 0}, {0, 0, 0}}});
  for (Label l : {N, C}) {
    const ClassScores s = class_prf(diag, l);
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 1.0);
  }
  const ClassScores empty = class_prf(diag, O);
  CHECK(empty.precision == 0.0);
  CHECK(empty.recall == 0.0);
  CHECK(empty.f1 == 0.0);

  // NAG row (8,2,0); NAG column (8,1,1).
  const ConfusionMatrix m = from_counts({{{8, 2, 0}, {1, 5, 0}, {1, 0, 3}}});
  const ClassScores s = class_prf(m, N);
  CHECK(s.precision == doctest::Approx(0.8));
  CHECK(s.recall == doctest::Approx(0.8));
  CHECK(s.f1 == doctest::Approx(0.8));
}

TEST_CASE("weighted_f1") {
  CHECK(weighted_f1(confusion(Labels{N, C, O}, Labels{N, C, O})) == 1.0);
  // Supports (2,1,1) with F1 (1,0,0).
  const ConfusionMatrix m = from_counts({{{2, 0, 0}, {0, 0, 1}, {0, 1, 0}}});
  CHECK(class_prf(m, N).f1 == 1.0);
  CHECK(class_prf(m, C).f1 == 0.0);
  CHECK(weighted_f1(m) == doctest::Approx(0.5));
  for (std::size_t n : {1u, 5u, 40u}) {
    Labels gold;
    for (std::size_t i = 0; i < n; ++i) gold.insert(gold.end(), {N, C, O});
    const Labels all_nag(gold.size(), N);
    CHECK(std::abs(weighted_f1(confusion(gold, all_nag)) - 1.0 / 6) <= 1e-15);
  }
}

TEST_CASE("property: weighted F1 equals the pairwise reference") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 60);
    const Labels gold = random_labels(rng, n);
    const Labels pred = random_labels(rng, n);
    CHECK(std::abs(weighted_f1(confusion(gold, pred)) - reference_weighted_f1(gold, pred)) <=
          1e-12);
  }
}

TEST_CASE("property: joint permutation leaves every metric unchanged") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 40);
    Labels gold = random_labels(rng, n);
    Labels pred = random_labels(rng, n);
    const EvalReport a = make_report(confusion(gold, pred));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    Labels g2, p2;
    for (std::size_t i : idx) {
      g2.push_back(gold[i]);
      p2.push_back(pred[i]);
    }
    const EvalReport b = make_report(confusion(g2, p2));
    CHECK(render_metrics_tsv(a) == render_metrics_tsv(b));
    CHECK(a.weighted_f1 == b.weighted_f1);
  }
}

TEST_CASE("property: weighted equals macro F1 under equal supports") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + uniform_index(rng, 15);
    Labels gold;
    for (Label l : kAllLabels) gold.insert(gold.end(), k, l);
    const Labels pred = random_labels(rng, gold.size());
    const ConfusionMatrix m = confusion(gold, pred);
    CHECK(std::abs(weighted_f1(m) - macro_f1(m)) <= 1e-12);
  }
}

TEST_CASE("property: totals and finiteness") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 10);
    // Few distinct labels so 0/0 cases show up often.
    Labels gold(n, kAllLabels[uniform_index(rng, 3)]);
    Labels pred(n, kAllLabels[uniform_index(rng, 3)]);
    if (uniform_index(rng, 2)) pred = random_labels(rng, n);
    const EvalReport r = make_report(confusion(gold, pred));
    CHECK(r.matrix.total() == n);
    std::uint64_t support = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      support += r.support[c];
      for (double v : {r.per_class[c].precision, r.per_class[c].recall, r.per_class[c].f1}) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
    CHECK(support == n);
    for (double v : {r.weighted_f1, r.macro_f1, r.accuracy}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("random baseline") {
  Labels balanced;
  for (int i = 0; i < 300; ++i) balanced.insert(balanced.end(), {N, C, O});
  CHECK(std::abs(random_baseline(balanced, 7, 2000) - 1.0 / 3) <= 0.01);

  // All-NAG gold: NAG precision 1 and recall about 1/3, so F1 about 1/2.
  const Labels nag(900, N);
  CHECK(std::abs(random_baseline(nag, 7, 2000) - 0.5) <= 0.01);

  CHECK(random_baseline(balanced, 42, 1) == random_baseline(balanced, 42, 1));
  CHECK(random_baseline(balanced, 42, 1) != random_baseline(balanced, 43, 1));
  // Trial t uses seed + t, so runs compose.
  const double two = random_baseline(balanced, 10, 2);
  const double a = random_baseline(balanced, 10, 1);
  const double b = random_baseline(balanced, 11, 1);
  CHECK(two == (a + b) / 2);

  CHECK_THROWS_AS(random_baseline(Labels{}, 1, 10), DataError);
  CHECK_THROWS_AS(random_baseline(balanced, 1, 0), UsageError);

  // Prior sampling on skewed gold beats uniform sampling on the majority class.
  Labels skewed(800, N);
  skewed.insert(skewed.end(), 100, C);
  skewed.insert(skewed.end(), 100, O);
  const double prior = random_baseline(skewed, 5, 500, BaselineMode::kPrior);
  const double uniform = random_baseline(skewed, 5, 500, BaselineMode::kUniform);
  CHECK(std::abs(prior - (0.64 + 0.01 + 0.01)) <= 0.02);
  CHECK(prior > uniform);
}

TEST_CASE("report files") {
  TempDir dir;
  const Labels gold{N, N, C, O, O, O};
  const Labels pred{N, C, C, O, O, N};
  EvalReport r = make_report(confusion(gold, pred));
  render_report(r, dir / "plain");
  CHECK(std::filesystem::exists(dir / "plain" / "metrics.tsv"));
  CHECK(std::filesystem::exists(dir / "plain" / "confusion.tsv"));
  CHECK(std::filesystem::exists(dir / "plain" / "confusion.svg"));
  CHECK_FALSE(std::filesystem::exists(dir / "plain" / "top_features.tsv"));

  const std::string conf = read_file(dir / "plain" / "confusion.tsv");
  CHECK(conf ==
        "gold\\pred\tNAG\tCAG\tOAG\n"
        "NAG\t1\t1\t0\n"
        "CAG\t0\t1\t0\n"
        "OAG\t1\t0\t2\n");
  // Row sums equal supports.
  std::istringstream rows(conf);
  std::string line;
  std::getline(rows, line);
  for (Label l : kAllLabels) {
    std::getline(rows, line);
    std::istringstream cells(line);
    std::string name;
    std::uint64_t a = 0, b = 0, c = 0;
    cells >> name >> a >> b >> c;
    CHECK(name == label_name(l));
    CHECK(a + b + c == r.support[label_index(l)]);
  }

  const std::string metrics = read_file(dir / "plain" / "metrics.tsv");
  CHECK(metrics.rfind("metric\tvalue\n", 0) == 0);
  CHECK(metrics.find("weighted_f1\t" + format4(r.weighted_f1) + "\n") != std::string::npos);
  CHECK(metrics.find("support_OAG\t3") != std::string::npos);
  CHECK(metrics.find("random_baseline") == std::string::npos);

  r.baseline_weighted_f1 = 0.33333;
  std::array<std::vector<FeatureWeight>, 3> top;
  top[0] = {{"unigram_a", 0, 1.0}, {"unigram_b", 1, 0.5}};
  top[2] = {{"char_tri_gram_xyz", 2, 0.7}};
  r.top_features = top;
  render_report(r, dir / "full");
  CHECK(read_file(dir / "full" / "metrics.tsv").find("random_baseline_weighted_f1\t0.3333\n") !=
        std::string::npos);
  CHECK(read_file(dir / "full" / "top_features.tsv") ==
        "NAG\tCAG\tOAG\nunigram_a\t\tchar_tri_gram_xyz\nunigram_b\t\t\n");
}

TEST_CASE("svg heatmap encodes row-normalised counts") {
  const std::string svg =
      render_confusion_svg(confusion(Labels{N, C, C, O}, Labels{N, C, C, O}));
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t full = 0;
  std::size_t pos = 0;
  while ((pos = svg.find("fill-opacity=\"1.0000\"", pos)) != std::string::npos) {
    ++full;
    ++pos;
  }
  CHECK(full == 3);
  CHECK(svg.find("<title>gold CAG, predicted CAG: 2</title>") != std::string::npos);
  for (Label l : kAllLabels) CHECK(svg.find(std::string(label_name(l))) != std::string::npos);
  // One rect per cell.
  std::size_t rects = 0;
  pos = 0;
  while ((pos = svg.find("<rect", pos)) != std::string::npos) {
    ++rects;
    ++pos;
  }
  CHECK(rects == 9);

  const std::string half = render_confusion_svg(confusion(Labels{N, N}, Labels{N, O}));
  CHECK(half.find("fill-opacity=\"0.5000\"") != std::string::npos);
}

TEST_CASE("unwritable report directory") {
  TempDir dir;
  testing::write_file(dir / "blocker", "x");
  const EvalReport r = make_report(confusion(Labels{N}, Labels{N}));
  CHECK_THROWS(render_report(r, dir / "blocker" / "sub"));
}

}  // namespace
}  // namespace aggrid
