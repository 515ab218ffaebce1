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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/align.hpp"

namespace forge {

// Books held out for evaluation. Defaults to 1 Corinthians, Mark, Galatians
// and Hebrews.
struct SplitConfig {
  std::set<std::string> test_books{"1Cor", "Mark", "Gal", "Heb"};

  // Comma separated labels, resolved to canonical names.
  static SplitConfig from_list(std::string_view csv, const BookNameTable& books);
  // Throws kUnknownBook / kInvalidArgument.
  void validate(const BookNameTable& books) const;
};

struct SplitResult {
  std::vector<AlignedPair> train;
  std::vector<AlignedPair> test;
  // No pair matched a test book. Not an error; callers should warn.
  bool empty_test = false;
};

SplitResult split(const std::vector<AlignedPair>& pairs, const SplitConfig& cfg);

// True iff no VerseId and no book occurs on both sides.
bool verify_no_leakage(const std::vector<AlignedPair>& train,
                       const std::vector<AlignedPair>& test);

}  // namespace forge
