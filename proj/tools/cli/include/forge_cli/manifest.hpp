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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forge::cli {

struct InputDigest {
  std::string path;  // as given by the user
  std::string sha256;
};

struct Provenance {
  std::string command;
  std::string config_sha256;
  std::optional<std::uint64_t> seed;
  std::vector<InputDigest> inputs;
};

InputDigest digest_input(const std::filesystem::path& path);

// SHA-256 over "key=value\n" lines in the given order.
std::string params_sha256(const std::vector<std::pair<std::string, std::string>>& params);

// Manifest text for an artifact; output path is recorded by file name only.
std::string manifest_json(const std::filesystem::path& output, std::string_view bytes,
                          const Provenance& provenance);

// Writes the artifact and <artifact>.manifest.json next to it.
void write_artifact(const std::filesystem::path& output, std::string_view bytes,
                    const Provenance& provenance);

}  // namespace forge::cli
