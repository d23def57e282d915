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

#ifndef AGGRID_CORPUS_IO_H_
#define AGGRID_CORPUS_IO_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aggrid {

// The three aggression levels. The numeric order fixes row/column order in
// confusion matrices and reports, and the tie-break order in prediction.
enum class Label : std::uint8_t { kNag = 0, kCag = 1, kOag = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kNag, Label::kCag, Label::kOag};

inline constexpr std::size_t label_index(Label l) {
  return static_cast<std::size_t>(l);
}
std::string_view label_name(Label label);
// Case-insensitive; throws DataError on anything but NAG/CAG/OAG.
Label parse_label(std::string_view s);

enum class Language { kEnglish, kHindi };
std::string_view language_name(Language lang);
Language parse_language(std::string_view s);

struct Document {
  std::string id;
  std::string text;
  std::optional<Label> gold;
};

struct Corpus {
  std::vector<Document> documents;
  Language language = Language::kEnglish;
  std::string provenance;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
  bool fully_labeled() const;
  std::vector<Label> gold_labels() const;
};

// TSV is the canonical format: `id<TAB>text[<TAB>label]` with backslash
// escapes (\t, \n, \r, \\) inside fields. CSV follows RFC 4180 quoting.
enum class CorpusFormat { kTsv, kCsv };
CorpusFormat parse_corpus_format(std::string_view s);

// Blank lines are skipped. Errors carry the 1-based line number. Without
// `has_labels` a third column is allowed and ignored.
Corpus load_corpus(const std::filesystem::path& path, bool has_labels,
                   Language language, CorpusFormat format = CorpusFormat::kTsv);
Corpus parse_corpus(std::istream& in, bool has_labels, Language language,
                    CorpusFormat format, std::string provenance);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Writes `id<TAB>label` rows in corpus order, LF line endings.
void write_predictions(const Corpus& corpus, std::span<const Label> predictions,
                       const std::filesystem::path& path);
std::vector<std::pair<std::string, Label>> load_predictions(
    const std::filesystem::path& path);

}  // namespace aggrid

#endif  // AGGRID_CORPUS_IO_H_
