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

#ifndef AGGRID_TESTS_ORACLES_H_
#define AGGRID_TESTS_ORACLES_H_

// Reference implementations written directly from the formulas, sharing no
// code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aggrid/corpus_io.h"

namespace aggrid::testing {

using Strings = std::vector<std::string>;

// Reference objective evaluated densely and independently of the library.
inline double reference_loss(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                      const std::vector<double>& w, double b, double lambda) {
  const double m = static_cast<double>(X.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * X[i][j];
    const double p = 1.0 / (1.0 + std::exp(-z));
    loss += -(y[i] * std::log(p) + (1 - y[i]) * std::log(1.0 - p));
  }
  double ww = 0.0;
  for (double v : w) ww += v * v;
  return loss / m + lambda / (2.0 * m) * ww;
}

// Every n-subset of positions in lexicographic order, kept when each gap is
// at most k + 1.
inline Strings brute_skip_grams(const Strings& tokens, int k, int n) {
  std::vector<std::vector<std::size_t>> picks;
  const std::size_t len = tokens.size();
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < len; ++i) {
      if (mask & (1u << i)) pos.push_back(i);
    }
    if (pos.size() != static_cast<std::size_t>(n)) continue;
    bool ok = true;
    for (std::size_t i = 1; i < pos.size(); ++i) ok = ok && pos[i] - pos[i - 1] <= static_cast<std::size_t>(k) + 1;
    if (ok) picks.push_back(pos);
  }
  std::sort(picks.begin(), picks.end());
  Strings out;
  for (const auto& pos : picks) {
    std::string s;
    for (std::size_t p : pos) s += (s.empty() ? "" : " ") + tokens[p];
    out.push_back(s);
  }
  return out;
}

// Dense term-document matrix with the TF-IDF formula evaluated directly.
inline std::vector<std::vector<double>> dense_tfidf(const std::vector<Strings>& fit_docs,
                                             const std::vector<Strings>& docs,
                                             std::size_t min_df, Strings& terms_out) {
  std::map<std::string, std::size_t> df;
  for (const auto& d : fit_docs) {
    std::map<std::string, int> seen;
    for (const auto& t : d) seen[t] = 1;
    for (const auto& [t, one] : seen) df[t] += 1;
  }
  terms_out.clear();
  for (const auto& [t, c] : df) {
    if (c >= min_df) terms_out.push_back(t);
  }
  const double n = static_cast<double>(fit_docs.size());
  std::vector<std::vector<double>> out;
  for (const auto& d : docs) {
    std::vector<double> row(terms_out.size(), 0.0);
    for (std::size_t j = 0; j < terms_out.size(); ++j) {
      const double tf = static_cast<double>(std::count(d.begin(), d.end(), terms_out[j]));
      row[j] = tf * (std::log((1.0 + n) / (1.0 + static_cast<double>(df[terms_out[j]]))) + 1.0);
    }
    double ss = 0.0;
    for (double x : row) ss += x * x;
    if (ss > 0) {
      for (double& x : row) x /= std::sqrt(ss);
    }
    out.push_back(row);
  }
  return out;
}

// Weighted F1 straight from the label lists, one class at a time.
inline double reference_weighted_f1(const std::vector<Label>& gold, const std::vector<Label>& pred) {
  double num = 0.0;
  double den = 0.0;
  for (Label c : kAllLabels) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool g = gold[i] == c;
      const bool p = pred[i] == c;
      tp += g && p;
      fp += !g && p;
      fn += g && !p;
    }
    const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f1 =
        precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    num += (tp + fn) * f1;
    den += tp + fn;
  }
  return num / den;
}

}  // namespace aggrid::testing

#endif  // AGGRID_TESTS_ORACLES_H_
