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

#include "aggrid/model.h"

#include <algorithm>
#include <cmath>
#include <compare>
#include <future>
#include <numeric>
#include <stdexcept>

#include "aggrid/error.h"
#include "aggrid/lexfeatures.h"

namespace aggrid {
namespace {

constexpr double kArmijoC = 1e-4;
constexpr int kMaxHalvings = 60;

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void check_inputs(std::span<const SparseVector> X, std::size_t n_targets) {
  if (X.empty()) throw DataError("training set is empty");
  if (X.size() != n_targets) {
    throw DataError("training set has " + std::to_string(X.size()) + " vectors but " +
                    std::to_string(n_targets) + " targets");
  }
  const std::size_t dim = X.front().dimension();
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].dimension() != dim) {
      throw DataError("dimension mismatch at example " + std::to_string(i) + ": " +
                      std::to_string(X[i].dimension()) + " vs " + std::to_string(dim));
    }
    for (const auto& e : X[i].entries()) {
      if (!std::isfinite(e.weight)) {
        throw DataError("non-finite feature value at example " + std::to_string(i));
      }
    }
  }
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Objective value at (w, b); also leaves the margins in `margins`.
double loss_at(std::span<const SparseVector> X, std::span<const int> y,
               std::span<const double> w, double b, double reg_lambda,
               std::vector<double>& margins) {
  const double m = static_cast<double>(X.size());
  margins.resize(X.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double z = X[i].dot(w) + b;
    margins[i] = z;
    loss += softplus(z) - (y[i] != 0 ? z : 0.0);
  }
  return loss / m + reg_lambda / (2.0 * m) * squared_norm(w);
}

void gradient_from_margins(std::span<const SparseVector> X, std::span<const int> y,
                           std::span<const double> w, double reg_lambda,
                           std::span<const double> margins, std::vector<double>& grad_w,
                           double& grad_b) {
  const double m = static_cast<double>(X.size());
  grad_w.assign(w.size(), 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double r = sigmoid(margins[i]) - (y[i] != 0 ? 1.0 : 0.0);
    grad_b += r;
    for (const auto& e : X[i].entries()) grad_w[e.index] += r * e.weight;
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    grad_w[j] = grad_w[j] / m + reg_lambda / m * w[j];
  }
  grad_b /= m;
}

double max_abs(std::span<const double> g, double gb) {
  double mx = std::abs(gb);
  for (double v : g) mx = std::max(mx, std::abs(v));
  return mx;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(reg_lambda >= 0.0) || !std::isfinite(reg_lambda)) {
    throw UsageError("reg_lambda must be >= 0");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError("learning_rate must be > 0");
  }
  if (max_iters < 1) throw UsageError("max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw UsageError("grad_tol must be > 0");
}

double BinaryLogReg::probability(const SparseVector& x) const {
  return sigmoid(decision(x));
}

Objective logistic_objective(std::span<const SparseVector> X, std::span<const int> y,
                             std::span<const double> w, double b, double reg_lambda) {
  check_inputs(X, y.size());
  if (X.front().dimension() != w.size()) throw DataError("weight dimension mismatch");
  Objective obj;
  std::vector<double> margins;
  obj.loss = loss_at(X, y, w, b, reg_lambda, margins);
  gradient_from_margins(X, y, w, reg_lambda, margins, obj.grad_w, obj.grad_b);
  return obj;
}

BinaryLogReg train_binary(std::span<const SparseVector> X, std::span<const int> y,
                          const TrainConfig& config) {
  config.validate();
  check_inputs(X, y.size());
  for (int t : y) {
    if (t != 0 && t != 1) throw DataError("binary targets must be 0 or 1");
  }
  // Sums run over a canonical example order so that permuting the input
  // yields a bit-identical model.
  std::vector<std::size_t> order(X.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    const auto ea = X[a].entries();
    const auto ec = X[c].entries();
    const auto cmp = std::lexicographical_compare_three_way(
        ea.begin(), ea.end(), ec.begin(), ec.end(), [](const auto& u, const auto& v) {
          if (u.index != v.index) return u.index <=> v.index;
          if (u.weight < v.weight) return std::strong_ordering::less;
          if (v.weight < u.weight) return std::strong_ordering::greater;
          return std::strong_ordering::equal;
        });
    if (cmp != 0) return cmp < 0;
    return y[a] < y[c];
  });
  std::vector<SparseVector> sorted_x;
  std::vector<int> sorted_y;
  sorted_x.reserve(X.size());
  sorted_y.reserve(X.size());
  for (std::size_t i : order) {
    sorted_x.push_back(X[i]);
    sorted_y.push_back(y[i]);
  }
  X = sorted_x;
  y = sorted_y;

  const std::size_t dim = X.front().dimension();
  const double lambda = config.reg_lambda;

  BinaryLogReg model;
  model.reg_lambda = lambda;
  model.weights.assign(dim, 0.0);
  std::vector<double>& w = model.weights;
  double& b = model.bias;

  std::vector<double> margins;
  std::vector<double> grad_w;
  double grad_b = 0.0;
  double loss = loss_at(X, y, w, b, lambda, margins);
  gradient_from_margins(X, y, w, lambda, margins, grad_w, grad_b);
  model.stats.loss_history.push_back(loss);

  std::vector<double> trial_w(dim);
  std::vector<double> trial_margins;
  int iter = 0;
  double gnorm = max_abs(grad_w, grad_b);
  while (gnorm > config.grad_tol && iter < config.max_iters) {
    const double g2 = squared_norm(grad_w) + grad_b * grad_b;
    double step = config.learning_rate;
    bool accepted = false;
    double trial_loss = loss;
    double trial_b = b;
    for (int h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
      for (std::size_t j = 0; j < dim; ++j) trial_w[j] = w[j] - step * grad_w[j];
      trial_b = b - step * grad_b;
      trial_loss = loss_at(X, y, trial_w, trial_b, lambda, trial_margins);
      // The strict test rejects steps whose decrease is lost to rounding.
      if (trial_loss <= loss - kArmijoC * step * g2 && trial_loss < loss) {
        accepted = true;
        break;
      }
    }
    // No representable decrease is left; stop without claiming convergence.
    if (!accepted) break;
    if (trial_loss > loss) throw std::logic_error("objective increased on an accepted step");
    w.swap(trial_w);
    b = trial_b;
    margins.swap(trial_margins);
    loss = trial_loss;
    gradient_from_margins(X, y, w, lambda, margins, grad_w, grad_b);
    gnorm = max_abs(grad_w, grad_b);
    model.stats.loss_history.push_back(loss);
    ++iter;
  }
  model.stats.iterations = iter;
  model.stats.final_loss = loss;
  model.stats.final_grad_norm = gnorm;
  model.stats.converged = gnorm <= config.grad_tol;
  return model;
}

OvRModel train_ovr(std::span<const SparseVector> X, std::span<const Label> labels,
                   const TrainConfig& config) {
  config.validate();
  if (X.empty()) throw DataError("cannot train on an empty corpus");
  check_inputs(X, labels.size());
  OvRModel model;
  model.train_config = config;
  for (Label l : labels) ++model.class_counts[label_index(l)];
  const auto present = std::count_if(model.class_counts.begin(), model.class_counts.end(),
                                     [](std::size_t c) { return c > 0; });
  model.single_class = present < 2;

  std::array<std::vector<int>, kNumLabels> targets;
  for (Label c : kAllLabels) {
    auto& t = targets[label_index(c)];
    t.reserve(labels.size());
    for (Label l : labels) t.push_back(l == c ? 1 : 0);
  }
  std::array<std::future<BinaryLogReg>, kNumLabels> jobs;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    jobs[c] = std::async(std::launch::async, [&, c] { return train_binary(X, targets[c], config); });
  }
  for (std::size_t c = 0; c < kNumLabels; ++c) model.classifiers[c] = jobs[c].get();
  return model;
}

std::array<double, kNumLabels> predict_proba(const OvRModel& model, const SparseVector& x) {
  if (x.dimension() != model.dimension()) {
    throw DataError("vector dimension " + std::to_string(x.dimension()) +
                    " does not match model dimension " + std::to_string(model.dimension()));
  }
  std::array<double, kNumLabels> p{};
  for (std::size_t c = 0; c < kNumLabels; ++c) p[c] = model.classifiers[c].probability(x);
  return p;
}

Label argmax_label(const std::array<double, kNumLabels>& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumLabels; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return kAllLabels[best];
}

Label predict(const OvRModel& model, const SparseVector& x) {
  return argmax_label(predict_proba(model, x));
}

std::vector<FeatureWeight> top_features(const OvRModel& model, Label label, std::size_t k) {
  const auto& w = model.classifier(label).weights;
  std::vector<FeatureWeight> all;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0) all.push_back({"", static_cast<std::uint32_t>(i), w[i]});
  }
  const std::size_t take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                    [](const FeatureWeight& a, const FeatureWeight& b) {
                      return a.weight != b.weight ? a.weight > b.weight : a.index < b.index;
                    });
  all.resize(take);
  for (auto& f : all) {
    f.name = model.pipeline ? model.pipeline->feature_name(f.index)
                            : "f" + std::to_string(f.index);
  }
  return all;
}

}  // namespace aggrid
