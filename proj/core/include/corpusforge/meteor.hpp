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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/align.hpp"
#include "corpusforge/verse_id.hpp"

namespace forge {

enum class MatchStage { kExact, kLowercase };

// Unigram METEOR restricted to the exact and lowercase stages. Synonym,
// stem and paraphrase modules are not implemented.
struct MeteorParams {
  double alpha = 0.9;
  double gamma = 0.5;
  double beta = 3.0;
  std::vector<MatchStage> stages{MatchStage::kExact, MatchStage::kLowercase};

  void validate() const;
  bool folds_case() const;
};

// Whitespace split, leading/trailing Unicode punctuation stripped, empty
// tokens dropped, lowercased when the lowercase stage is enabled.
std::vector<std::string> meteor_tokenize(std::string_view text, const MeteorParams& params);

struct MeteorAlignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  bool exact = true;  // false when the greedy fallback was used
};

// Maximum unigram matching with the fewest chunks. Exact search with
// memoization when matches <= 32 and the search fits its budget; otherwise a
// deterministic greedy alignment.
MeteorAlignment meteor_align(const std::vector<std::string>& hyp,
                             const std::vector<std::string>& ref);

struct MeteorStats {
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  MeteorAlignment alignment;
  double precision = 0.0;
  double recall = 0.0;
  double fmean = 0.0;
  double penalty = 0.0;
  double score = 0.0;
};

MeteorStats meteor_stats(std::string_view hypothesis, std::string_view reference,
                         const MeteorParams& params = {});
double meteor(std::string_view hypothesis, std::string_view reference,
              const MeteorParams& params = {});

struct Hypothesis {
  VerseId id;
  std::string version;
  std::string text;
};

struct VerseScore {
  VerseId id;
  std::string version;
  double score = 0.0;
};

struct MetricReport {
  std::vector<VerseScore> per_verse;
  double corpus_mean = 0.0;
};

// Pairwise summation in index order.
double pairwise_mean(const std::vector<double>& values);

// Throws kMissingReference when a hypothesis has no (id, version) reference.
MetricReport evaluate_corpus(const std::vector<Hypothesis>& hypotheses,
                             const std::vector<AlignedPair>& references,
                             const MeteorParams& params = {}, unsigned threads = 1);

}  // namespace forge
