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

#ifndef AGGRID_CLI_H_
#define AGGRID_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aggrid/corpus_io.h"
#include "aggrid/featurize.h"
#include "aggrid/model.h"
#include "aggrid/pipeline.h"

namespace aggrid {

// Everything a training run needs. Built from a flat `key = value` file where
// only `language` and `blocks` are required.
struct RunConfig {
  Language language = Language::kEnglish;
  std::vector<FeatureBlockSpec> blocks;
  std::size_t min_df = kDefaultMinDf;
  PreprocessSettings preprocess;
  ResourceSettings resources;
  TrainConfig train;
  bool merge_validation = false;

  // Block/resource/language consistency. Throws UsageError.
  void validate() const;
};

// Parses config text. Relative paths resolve against `base_dir`.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);
// Applies one `key=value` override on top of an existing config text.
std::string apply_override(std::string text, std::string_view assignment);

// Built-in configs: `english:<blocks>` and `hindi:<blocks>` for every
// validation-table row, plus `english-system1..3` and `hindi-system1..2`.
std::vector<std::string> preset_names();
std::string preset_config_text(std::string_view name);

// Runs one command line (without the program name). Returns the exit code:
// 0 success, 1 usage error, 2 data error, 3 resource error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aggrid

#endif  // AGGRID_CLI_H_
