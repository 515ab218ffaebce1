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


#include "forge_cli/manifest.hpp"

#include <nlohmann/json.hpp>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/digest.hpp"
#include "corpusforge/version.hpp"

namespace forge::cli {

InputDigest digest_input(const std::filesystem::path& path) {
  return {path.generic_string(), sha256_file(path)};
}

std::string params_sha256(const std::vector<std::pair<std::string, std::string>>& params) {
  std::string text;
  for (const auto& [k, v] : params) text += k + "=" + v + "\n";
  return sha256_hex(text);
}

std::string manifest_json(const std::filesystem::path& output, std::string_view bytes,
                          const Provenance& provenance) {
  using json = nlohmann::ordered_json;
  json j;
  j["tool"] = "forge";
  j["version"] = kVersion;
  j["command"] = provenance.command;
  j["config_sha256"] = provenance.config_sha256;
  j["seed"] = provenance.seed ? json(*provenance.seed) : json(nullptr);
  json inputs = json::array();
  for (const auto& in : provenance.inputs) {
    inputs.push_back(json{{"path", in.path}, {"sha256", in.sha256}});
  }
  j["inputs"] = std::move(inputs);
  j["output"] = json{{"path", output.filename().generic_string()},
                     {"sha256", sha256_hex(bytes)},
                     {"bytes", bytes.size()}};
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

void write_artifact(const std::filesystem::path& output, std::string_view bytes,
                    const Provenance& provenance) {
  write_file(output, bytes);
  auto manifest = output;
  manifest += ".manifest.json";
  write_file(manifest, manifest_json(output, bytes, provenance));
}

}  // namespace forge::cli
