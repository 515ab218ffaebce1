// Copyright 2026 The corpusforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/noise.hpp"
#include "corpusforge/split.hpp"

namespace forge::cli {

// Every problem found in a pipeline configuration, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

enum class SettingSource { kDefault, kFile, kEnv, kFlag };

struct Setting {
  std::string value;
  SettingSource source = SettingSource::kFile;
  std::size_t line = 0;
};

using Settings = std::map<std::string, Setting>;

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_env();

// FORGE_ followed by the key upper-cased with '.' replaced by '_'.
std::string env_name(std::string_view key);

// Keys that may be overridden from the environment.
const std::vector<std::string>& scalar_keys();

struct DocSetPaths {
  std::string name;
  std::filesystem::path tokens;
  std::filesystem::path marks;
  std::filesystem::path feats;
};

struct ReferencePath {
  std::string label;
  std::filesystem::path path;
};

struct PipelineConfig {
  std::optional<std::filesystem::path> books;
  std::optional<std::filesystem::path> romanization_table;
  std::optional<std::filesystem::path> confusion_map;
  std::string unmapped = "replace";
  std::vector<DocSetPaths> paula;  // by name
  bool lenient = false;
  std::vector<ReferencePath> references;  // by label
  std::filesystem::path output_dir;
  SplitConfig split;
  bool romanize = false;
  bool emit_stats = true;
  bool export_tsv = false;
  std::uint64_t seed = 0;
  std::vector<double> rates;
  bool noise_train = true;
  bool noise_test = true;
  NoiseConfig noise;
  unsigned threads = 1;
  // Effective settings as sorted key=value lines, threads excluded.
  std::string canonical;
};

// Flat key=value lines; '#' starts a comment line. Syntax problems are
// appended to violations.
Settings parse_config_text(std::string_view text, std::vector<std::string>& violations);

// Reads the file, applies env then flag overrides (flag > env > file >
// default) and checks everything. Relative paths from the file resolve
// against its directory, those from env or flags against the working
// directory. Throws ConfigError.
PipelineConfig validate_config(const std::filesystem::path& path,
                               const Settings& flag_overrides = {},
                               const EnvLookup& env = process_env());

}  // namespace forge::cli
