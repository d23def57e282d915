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

#ifndef AGGRID_MODEL_H_
#define AGGRID_MODEL_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "aggrid/corpus_io.h"
#include "aggrid/featurize.h"
#include "aggrid/pipeline.h"

namespace aggrid {

struct TrainConfig {
  double reg_lambda = 1.0;
  double learning_rate = 0.5;
  int max_iters = 1000;
  double grad_tol = 1e-6;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrainStats {
  int iterations = 0;
  double final_loss = 0.0;
  double final_grad_norm = 0.0;  // max-norm of the full gradient
  bool converged = false;
  // Objective after every accepted step, starting with the initial value.
  // Not persisted.
  std::vector<double> loss_history;
};

struct BinaryLogReg {
  std::vector<double> weights;
  double bias = 0.0;
  double reg_lambda = 0.0;
  TrainStats stats;

  double decision(const SparseVector& x) const { return x.dot(weights) + bias; }
  double probability(const SparseVector& x) const;
};

// Value and gradient of
//   J(w, b) = mean log-loss + lambda / (2m) * |w|^2
// with the bias left unregularised.
struct Objective {
  double loss = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
};

Objective logistic_objective(std::span<const SparseVector> X, std::span<const int> y,
                             std::span<const double> w, double b, double reg_lambda);

// Full-batch gradient descent from zero with Armijo backtracking (the step
// starts at learning_rate each iteration and halves until sufficient
// decrease). Stops once the gradient max-norm reaches grad_tol, or when no
// step lowers the objective any more.
BinaryLogReg train_binary(std::span<const SparseVector> X, std::span<const int> y,
                          const TrainConfig& config);

struct OvRModel {
  std::array<BinaryLogReg, kNumLabels> classifiers;
  // Null for models trained directly on vectors.
  std::shared_ptr<const FeaturePipeline> pipeline;
  PreprocessSettings preprocess;
  TrainConfig train_config;
  std::array<std::size_t, kNumLabels> class_counts{};
  // Set when training saw only one class.
  bool single_class = false;

  std::size_t dimension() const { return classifiers[0].weights.size(); }
  const BinaryLogReg& classifier(Label l) const { return classifiers[label_index(l)]; }
};

// One class-vs-rest problem per label, trained concurrently.
OvRModel train_ovr(std::span<const SparseVector> X, std::span<const Label> labels,
                   const TrainConfig& config);

// Independent per-class sigmoid scores; they need not sum to one.
std::array<double, kNumLabels> predict_proba(const OvRModel& model, const SparseVector& x);
// First maximum in NAG, CAG, OAG order.
Label argmax_label(const std::array<double, kNumLabels>& scores);
Label predict(const OvRModel& model, const SparseVector& x);

struct FeatureWeight {
  std::string name;
  std::uint32_t index = 0;
  double weight = 0.0;
};

// Largest nonzero weights of one class, descending (ties by index).
std::vector<FeatureWeight> top_features(const OvRModel& model, Label label, std::size_t k);

inline constexpr int kModelFormatVersion = 1;

void save_model(const OvRModel& model, const std::filesystem::path& path);
std::string serialize_model(const OvRModel& model);
// Reloads referenced resources and checks their checksums. Throws
// ResourceError on version or checksum mismatch and on truncated input.
OvRModel load_model(const std::filesystem::path& path);
// `sentiment_sidecar` overrides the recorded sidecar path when non-empty.
OvRModel load_model(const std::filesystem::path& path, const std::string& sentiment_sidecar);
OvRModel parse_model(std::string_view text, const std::string& sentiment_sidecar = {});

}  // namespace aggrid

#endif  // AGGRID_MODEL_H_
