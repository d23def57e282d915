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

#ifndef AGGRID_EVALUATE_H_
#define AGGRID_EVALUATE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "aggrid/corpus_io.h"
#include "aggrid/model.h"

namespace aggrid {

// Rows are gold labels, columns predictions, both in NAG, CAG, OAG order.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kNumLabels>, kNumLabels> counts{};

  std::uint64_t total() const;
  std::uint64_t row_sum(Label gold) const;
  std::uint64_t col_sum(Label pred) const;
  std::uint64_t at(Label gold, Label pred) const {
    return counts[label_index(gold)][label_index(pred)];
  }
};

ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> pred);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Any 0/0 ratio counts as zero.
ClassScores class_prf(const ConfusionMatrix& matrix, Label label);
double weighted_f1(const ConfusionMatrix& matrix);
double macro_f1(const ConfusionMatrix& matrix);
double accuracy(const ConfusionMatrix& matrix);

enum class BaselineMode {
  kUniform,  // each label with probability 1/3
  kPrior,    // labels drawn from the gold label distribution
};

// Mean weighted F1 of random predictions over `trials` runs. Trial t draws
// from an mt19937_64 seeded with seed + t, so the result does not depend on
// how trials are scheduled.
double random_baseline(std::span<const Label> gold, std::uint64_t seed, std::size_t trials,
                       BaselineMode mode = BaselineMode::kUniform);

struct EvalReport {
  ConfusionMatrix matrix;
  std::array<ClassScores, kNumLabels> per_class{};
  std::array<std::uint64_t, kNumLabels> support{};
  double weighted_f1 = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  std::optional<double> baseline_weighted_f1;
  std::optional<std::array<std::vector<FeatureWeight>, kNumLabels>> top_features;
};

EvalReport make_report(const ConfusionMatrix& matrix);

std::string render_metrics_tsv(const EvalReport& report);
std::string render_confusion_tsv(const ConfusionMatrix& matrix);
// Heatmap with fill-opacity equal to the row-normalised count.
std::string render_confusion_svg(const ConfusionMatrix& matrix);
// Three columns (NAG, CAG, OAG) of feature names; short columns are left blank.
std::string render_top_features_tsv(const std::array<std::vector<FeatureWeight>, kNumLabels>& top);

// Writes metrics.tsv, confusion.tsv, confusion.svg and, when present,
// top_features.tsv.
void render_report(const EvalReport& report, const std::filesystem::path& out_dir);

}  // namespace aggrid

#endif  // AGGRID_EVALUATE_H_
