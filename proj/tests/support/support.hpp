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
#include <random>
#include <string>
#include <vector>

#include "corpusforge/align.hpp"

namespace forge::testing {

std::filesystem::path fixture(const std::string& name);

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Lowercase Sahidic letters plus space.
std::string random_coptic(std::mt19937_64& rng, std::size_t letters);

// n verses spread over the standard books, one pair per version label.
std::vector<AlignedPair> synthetic_corpus(std::mt19937_64& rng, std::size_t verses,
                                          const std::vector<std::string>& versions = {"v1"},
                                          std::size_t min_letters = 20,
                                          std::size_t max_letters = 80);

// Exhaustive METEOR: enumerates every maximum matching and keeps the one
// with the fewest chunks. Tokens are split on ' ' and compared after ASCII
// lowercasing.
struct OracleResult {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  double score = 0.0;
};
OracleResult meteor_oracle(const std::string& hyp, const std::string& ref, double alpha = 0.9,
                           double beta = 3.0, double gamma = 0.5);

}  // namespace forge::testing
