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

#include "aggrid/evaluate.h"

#include <fstream>
#include <random>
#include <sstream>

#include "aggrid/error.h"
#include "aggrid/text_util.h"

namespace aggrid {
namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// Unbiased draw from [0, bound) using rejection on the raw engine output.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << body;
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts) {
    for (auto c : row) t += c;
  }
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(Label gold) const {
  std::uint64_t t = 0;
  for (auto c : counts[label_index(gold)]) t += c;
  return t;
}

std::uint64_t ConfusionMatrix::col_sum(Label pred) const {
  std::uint64_t t = 0;
  for (const auto& row : counts) t += row[label_index(pred)];
  return t;
}

ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> pred) {
  if (gold.size() != pred.size()) {
    throw DataError("length mismatch: " + std::to_string(gold.size()) + " gold labels vs " +
                    std::to_string(pred.size()) + " predictions");
  }
  if (gold.empty()) throw DataError("cannot score an empty label list");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++m.counts[label_index(gold[i])][label_index(pred[i])];
  }
  return m;
}

ClassScores class_prf(const ConfusionMatrix& matrix, Label label) {
  const double tp = static_cast<double>(matrix.at(label, label));
  ClassScores s;
  s.precision = ratio(tp, static_cast<double>(matrix.col_sum(label)));
  s.recall = ratio(tp, static_cast<double>(matrix.row_sum(label)));
  s.f1 = ratio(2.0 * s.precision * s.recall, s.precision + s.recall);
  return s;
}

double weighted_f1(const ConfusionMatrix& matrix) {
  double num = 0.0;
  double den = 0.0;
  for (Label l : kAllLabels) {
    const double support = static_cast<double>(matrix.row_sum(l));
    num += support * class_prf(matrix, l).f1;
    den += support;
  }
  return ratio(num, den);
}

double macro_f1(const ConfusionMatrix& matrix) {
  double s = 0.0;
  for (Label l : kAllLabels) s += class_prf(matrix, l).f1;
  return s / static_cast<double>(kNumLabels);
}

double accuracy(const ConfusionMatrix& matrix) {
  double diag = 0.0;
  for (Label l : kAllLabels) diag += static_cast<double>(matrix.at(l, l));
  return ratio(diag, static_cast<double>(matrix.total()));
}

double random_baseline(std::span<const Label> gold, std::uint64_t seed, std::size_t trials,
                       BaselineMode mode) {
  if (gold.empty()) throw DataError("random baseline needs gold labels");
  if (trials < 1) throw UsageError("random baseline needs at least one trial");
  std::vector<Label> pred(gold.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + t);
    for (auto& p : pred) {
      const std::uint64_t bound = mode == BaselineMode::kUniform ? kNumLabels : gold.size();
      const std::uint64_t r = draw_below(rng, bound);
      p = mode == BaselineMode::kUniform ? kAllLabels[r] : gold[r];
    }
    sum += weighted_f1(confusion(gold, pred));
  }
  return sum / static_cast<double>(trials);
}

EvalReport make_report(const ConfusionMatrix& matrix) {
  EvalReport r;
  r.matrix = matrix;
  for (Label l : kAllLabels) {
    r.per_class[label_index(l)] = class_prf(matrix, l);
    r.support[label_index(l)] = matrix.row_sum(l);
  }
  r.weighted_f1 = weighted_f1(matrix);
  r.macro_f1 = macro_f1(matrix);
  r.accuracy = accuracy(matrix);
  return r;
}

std::string render_metrics_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "metric\tvalue\n";
  out << "weighted_f1\t" << format4(report.weighted_f1) << '\n';
  out << "macro_f1\t" << format4(report.macro_f1) << '\n';
  out << "accuracy\t" << format4(report.accuracy) << '\n';
  for (Label l : kAllLabels) {
    const auto& s = report.per_class[label_index(l)];
    const std::string name(label_name(l));
    out << "precision_" << name << '\t' << format4(s.precision) << '\n';
    out << "recall_" << name << '\t' << format4(s.recall) << '\n';
    out << "f1_" << name << '\t' << format4(s.f1) << '\n';
    out << "support_" << name << '\t' << report.support[label_index(l)] << '\n';
  }
  if (report.baseline_weighted_f1) {
    out << "random_baseline_weighted_f1\t" << format4(*report.baseline_weighted_f1) << '\n';
  }
  return out.str();
}

std::string render_confusion_tsv(const ConfusionMatrix& matrix) {
  std::ostringstream out;
  out << "gold\\pred";
  for (Label l : kAllLabels) out << '\t' << label_name(l);
  out << '\n';
  for (Label g : kAllLabels) {
    out << label_name(g);
    for (Label p : kAllLabels) out << '\t' << matrix.at(g, p);
    out << '\n';
  }
  return out.str();
}

std::string render_confusion_svg(const ConfusionMatrix& matrix) {
  constexpr int kCell = 80;
  constexpr int kLeft = 90;
  constexpr int kTop = 60;
  const int size = kLeft + kCell * static_cast<int>(kNumLabels) + 20;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
      << size + 20 << "\" font-family=\"sans-serif\" font-size=\"14\">\n";
  out << "  <text x=\"" << kLeft + kCell * 3 / 2 << "\" y=\"20\" text-anchor=\"middle\">"
      << "predicted</text>\n";
  out << "  <text x=\"20\" y=\"" << kTop + kCell * 3 / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << kTop + kCell * 3 / 2 << ")\">gold</text>\n";
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    out << "  <text x=\"" << kLeft + kCell * static_cast<int>(c) + kCell / 2 << "\" y=\""
        << kTop - 10 << "\" text-anchor=\"middle\">" << label_name(kAllLabels[c]) << "</text>\n";
  }
  for (std::size_t g = 0; g < kNumLabels; ++g) {
    const Label gold = kAllLabels[g];
    const double row = static_cast<double>(matrix.row_sum(gold));
    const int y = kTop + kCell * static_cast<int>(g);
    out << "  <text x=\"" << kLeft - 10 << "\" y=\"" << y + kCell / 2 + 5
        << "\" text-anchor=\"end\">" << label_name(gold) << "</text>\n";
    for (std::size_t p = 0; p < kNumLabels; ++p) {
      const Label pred = kAllLabels[p];
      const std::uint64_t count = matrix.at(gold, pred);
      const double value = ratio(static_cast<double>(count), row);
      const int x = kLeft + kCell * static_cast<int>(p);
      out << "  <g>\n    <title>gold " << label_name(gold) << ", predicted " << label_name(pred)
          << ": " << count << "</title>\n";
      out << "    <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\""
          << kCell << "\" fill=\"#08306b\" fill-opacity=\"" << format4(value)
          << "\" stroke=\"#999999\"/>\n";
      out << "    <text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 5
          << "\" text-anchor=\"middle\" fill=\"" << (value > 0.5 ? "#ffffff" : "#000000")
          << "\">" << count << "</text>\n  </g>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_top_features_tsv(
    const std::array<std::vector<FeatureWeight>, kNumLabels>& top) {
  std::ostringstream out;
  out << "NAG\tCAG\tOAG\n";
  std::size_t rows = 0;
  for (const auto& col : top) rows = std::max(rows, col.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < kNumLabels; ++c) {
      if (c > 0) out << '\t';
      if (r < top[c].size()) out << escape_field(top[c][r].name);
    }
    out << '\n';
  }
  return out.str();
}

void render_report(const EvalReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw DataError("cannot create report directory " + out_dir.string());
  }
  write_file(out_dir / "metrics.tsv", render_metrics_tsv(report));
  write_file(out_dir / "confusion.tsv", render_confusion_tsv(report.matrix));
  write_file(out_dir / "confusion.svg", render_confusion_svg(report.matrix));
  if (report.top_features) {
    write_file(out_dir / "top_features.tsv", render_top_features_tsv(*report.top_features));
  }
}

}  // namespace aggrid
