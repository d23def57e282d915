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

#include "aggrid/corpus_io.h"

#include <fstream>
#include <istream>
#include <unordered_set>

#include "aggrid/error.h"
#include "aggrid/text_util.h"

namespace aggrid {
namespace {

struct RawRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

void strip_bom(std::string& line) {
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
}

std::vector<RawRecord> read_tsv(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    RawRecord rec;
    rec.line = line_no;
    for (auto& f : split(line, '\t')) rec.fields.push_back(unescape_field(f));
    records.push_back(std::move(rec));
  }
  return records;
}

// RFC 4180: quoted fields may contain separators, doubled quotes and line
// breaks. The record's line number is the line where it starts.
std::vector<RawRecord> read_csv(std::istream& in) {
  std::vector<RawRecord> records;
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  strip_bom(data);
  std::size_t line_no = 1;
  std::size_t i = 0;
  const std::size_t n = data.size();
  while (i < n) {
    RawRecord rec;
    rec.line = line_no;
    std::string field;
    bool record_done = false;
    bool saw_content = false;
    while (!record_done) {
      field.clear();
      if (i < n && data[i] == '"') {
        saw_content = true;
        ++i;
        while (true) {
          if (i >= n) {
            throw DataError("unterminated quoted field at line " +
                            std::to_string(rec.line));
          }
          if (data[i] == '"') {
            if (i + 1 < n && data[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (data[i] == '\n') ++line_no;
          field.push_back(data[i++]);
        }
        if (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
          throw DataError("unexpected character after quoted field at line " +
                          std::to_string(line_no));
        }
      } else {
        while (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
          field.push_back(data[i++]);
        }
        if (!field.empty()) saw_content = true;
      }
      rec.fields.push_back(field);
      if (i < n && data[i] == ',') {
        saw_content = true;
        ++i;
        continue;
      }
      if (i < n && data[i] == '\r') ++i;
      if (i < n && data[i] == '\n') {
        ++i;
        ++line_no;
      }
      record_done = true;
    }
    if (saw_content) records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::string_view label_name(Label label) {
  switch (label) {
    case Label::kNag: return "NAG";
    case Label::kCag: return "CAG";
    case Label::kOag: return "OAG";
  }
  return "?";
}

Label parse_label(std::string_view s) {
  const std::string upper = [&] {
    std::string u(s);
    for (char& c : u) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return u;
  }();
  if (upper == "NAG") return Label::kNag;
  if (upper == "CAG") return Label::kCag;
  if (upper == "OAG") return Label::kOag;
  throw DataError("unknown label " + std::string(s));
}

std::string_view language_name(Language lang) {
  return lang == Language::kHindi ? "hindi" : "english";
}

Language parse_language(std::string_view s) {
  const std::string lower = ascii_lower(s);
  if (lower == "english" || lower == "en") return Language::kEnglish;
  if (lower == "hindi" || lower == "hi") return Language::kHindi;
  throw UsageError("unknown language '" + std::string(s) + "'");
}

CorpusFormat parse_corpus_format(std::string_view s) {
  const std::string lower = ascii_lower(s);
  if (lower == "tsv") return CorpusFormat::kTsv;
  if (lower == "csv") return CorpusFormat::kCsv;
  throw UsageError("unknown corpus format '" + std::string(s) + "'");
}

bool Corpus::fully_labeled() const {
  for (const auto& d : documents) {
    if (!d.gold) return false;
  }
  return true;
}

std::vector<Label> Corpus::gold_labels() const {
  std::vector<Label> labels;
  labels.reserve(documents.size());
  for (const auto& d : documents) {
    if (!d.gold) throw DataError("document " + d.id + " has no gold label");
    labels.push_back(*d.gold);
  }
  return labels;
}

Corpus parse_corpus(std::istream& in, bool has_labels, Language language,
                    CorpusFormat format, std::string provenance) {
  const auto records = format == CorpusFormat::kTsv ? read_tsv(in) : read_csv(in);
  Corpus corpus;
  corpus.language = language;
  corpus.provenance = std::move(provenance);
  corpus.documents.reserve(records.size());
  std::unordered_set<std::string> seen;
  const std::size_t want = has_labels ? 3 : 2;
  for (const auto& rec : records) {
    const std::string at = " at line " + std::to_string(rec.line);
    if (rec.fields.size() < want || rec.fields.size() > 3) {
      throw DataError("malformed record: expected " + std::to_string(want) +
                      " fields, found " + std::to_string(rec.fields.size()) + at);
    }
    Document doc;
    doc.id = rec.fields[0];
    if (doc.id.empty()) throw DataError("empty document id" + at);
    doc.text = rec.fields[1];
    if (has_labels) {
      try {
        doc.gold = parse_label(trim(rec.fields[2]));
      } catch (const DataError& e) {
        throw DataError(std::string(e.what()) + at);
      }
    }
    if (!seen.insert(doc.id).second) {
      throw DataError("duplicate document id " + doc.id + at);
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, bool has_labels,
                   Language language, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus " + path.string());
  return parse_corpus(in, has_labels, language, format, path.string());
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& d : corpus.documents) {
    out << escape_field(d.id) << '\t' << escape_field(d.text);
    if (d.gold) out << '\t' << label_name(*d.gold);
    out << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

void write_predictions(const Corpus& corpus, std::span<const Label> predictions,
                       const std::filesystem::path& path) {
  if (predictions.size() != corpus.size()) {
    throw DataError("length mismatch: " + std::to_string(corpus.size()) +
                    " documents but " + std::to_string(predictions.size()) +
                    " predictions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    out << escape_field(corpus.documents[i].id) << '\t'
        << label_name(predictions[i]) << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<std::pair<std::string, Label>> load_predictions(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open predictions " + path.string());
  std::vector<std::pair<std::string, Label>> rows;
  for (const auto& rec : read_tsv(in)) {
    const std::string at = " at line " + std::to_string(rec.line);
    if (rec.fields.size() != 2) {
      throw DataError("malformed prediction row" + at);
    }
    try {
      rows.emplace_back(rec.fields[0], parse_label(trim(rec.fields[1])));
    } catch (const DataError& e) {
      throw DataError(std::string(e.what()) + at);
    }
  }
  return rows;
}

}  // namespace aggrid
