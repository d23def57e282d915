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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "aggrid/cli.h"
#include "aggrid/error.h"
#include "aggrid/evaluate.h"
#include "aggrid/featurize.h"
#include "aggrid/model.h"
#include "aggrid/pipeline.h"
#include "aggrid/preprocess.h"

namespace py = pybind11;

namespace aggrid {
namespace {

std::vector<Label> to_labels(const std::vector<std::string>& names) {
  std::vector<Label> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(parse_label(n));
  return out;
}

// A loaded model with its preprocessor, for scoring raw text.
class PyModel {
 public:
  explicit PyModel(const std::filesystem::path& path, const std::string& sidecar)
      : model_(load_model(path, sidecar)), pre_(model_.preprocess) {
    if (!model_.pipeline) throw ResourceError("model has no feature pipeline");
  }

  std::string language() const { return std::string(language_name(model_.preprocess.language)); }
  std::size_t dimension() const { return model_.dimension(); }

  std::vector<std::string> predict(const std::vector<std::string>& texts) {
    std::vector<std::string> out;
    for (const auto& x : vectors(texts)) out.emplace_back(label_name(aggrid::predict(model_, x)));
    return out;
  }

  std::vector<std::array<double, kNumLabels>> predict_proba(const std::vector<std::string>& texts) {
    std::vector<std::array<double, kNumLabels>> out;
    for (const auto& x : vectors(texts)) out.push_back(aggrid::predict_proba(model_, x));
    return out;
  }

  std::vector<std::pair<std::string, double>> top(const std::string& label, std::size_t k) const {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& f : top_features(model_, parse_label(label), k)) out.emplace_back(f.name, f.weight);
    return out;
  }

 private:
  std::vector<SparseVector> vectors(const std::vector<std::string>& texts) {
    std::vector<SparseVector> out;
    out.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const Document doc{std::to_string(i), texts[i], std::nullopt};
      out.push_back(model_.pipeline->transform(pre_.prepare(doc)));
    }
    return out;
  }

  OvRModel model_;
  Preprocessor pre_;
};

}  // namespace
}  // namespace aggrid

PYBIND11_MODULE(_core, m) {
  using namespace aggrid;
  m.doc() = "Aggression identification: preprocessing, features, logistic regression.";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<UsageError> usage(m, "UsageError", base.ptr());
  static py::exception<DataError> data(m, "DataError", base.ptr());
  static py::exception<ResourceError> resource(m, "ResourceError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UsageError& e) {
      PyErr_SetString(usage.ptr(), e.what());
    } catch (const DataError& e) {
      PyErr_SetString(data.ptr(), e.what());
    } catch (const ResourceError& e) {
      PyErr_SetString(resource.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  m.attr("LABELS") = py::make_tuple("NAG", "CAG", "OAG");

  m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
  m.def("word_ngrams",
        [](const std::vector<std::string>& tokens, int n) { return word_ngrams(tokens, n); },
        py::arg("tokens"), py::arg("n"));
  m.def("char_ngrams", [](const std::string& text, int n) { return char_ngrams(text, n); },
        py::arg("text"), py::arg("n"));
  m.def("skip_grams",
        [](const std::vector<std::string>& tokens, int k, int n) { return skip_grams(tokens, k, n); },
        py::arg("tokens"), py::arg("k"), py::arg("n"));

  m.def(
      "clean",
      [](const std::string& text, const std::string& language) {
        const Language lang = parse_language(language);
        return clean_text(text, lang == Language::kHindi ? CleanConfig::hindi()
                                                         : CleanConfig::english());
      },
      py::arg("text"), py::arg("language") = "english");
  m.def("transliterate", [](const std::string& text) { return transliterate_devanagari(text); },
        py::arg("text"));
  m.def("edit_distance",
        [](const std::string& a, const std::string& b) { return edit_distance(a, b); });

  m.def(
      "weighted_f1",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
        return weighted_f1(confusion(to_labels(gold), to_labels(pred)));
      },
      py::arg("gold"), py::arg("pred"));
  m.def(
      "confusion",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
        return confusion(to_labels(gold), to_labels(pred)).counts;
      },
      py::arg("gold"), py::arg("pred"), "Counts indexed [gold][pred] in LABELS order.");
  m.def(
      "random_baseline",
      [](const std::vector<std::string>& gold, std::uint64_t seed, std::size_t trials,
         const std::string& mode) {
        if (mode != "uniform" && mode != "prior") throw UsageError("unknown baseline mode " + mode);
        return random_baseline(to_labels(gold), seed, trials,
                               mode == "prior" ? BaselineMode::kPrior : BaselineMode::kUniform);
      },
      py::arg("gold"), py::arg("seed") = 0, py::arg("trials") = 100, py::arg("mode") = "uniform");

  py::class_<PyModel>(m, "Model")
      .def(py::init<const std::filesystem::path&, const std::string&>(), py::arg("path"),
           py::arg("sentiment_sidecar") = "")
      .def_property_readonly("language", &PyModel::language)
      .def_property_readonly("dimension", &PyModel::dimension)
      .def("predict", &PyModel::predict, py::arg("texts"))
      .def("predict_proba", &PyModel::predict_proba, py::arg("texts"),
           "Independent per-class sigmoid scores in LABELS order.")
      .def("top_features", &PyModel::top, py::arg("label"), py::arg("k") = 10);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
