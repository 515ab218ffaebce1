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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/align.hpp"
#include "corpusforge/verse_id.hpp"

namespace forge {

struct ConfusionAlternative {
  char32_t cp;
  double weight;  // normalized: weights of one key sum to 1

  bool operator==(const ConfusionAlternative&) const = default;
};

// Visually confusable glyphs. Each key lists its look-alikes in file order.
class ConfusionMap {
 public:
  // Hex code point TAB comma separated "hex:weight" list; '#' comments.
  static ConfusionMap parse(std::string_view tsv);
  static ConfusionMap load(const std::filesystem::path& path);
  // Shipped stand-in map of commonly confused Sahidic letters.
  static const ConfusionMap& standard();

  // Throws kInvalidConfusionMap: empty list, non-positive weight, or an
  // alternative equal to its key.
  void add(char32_t key, std::vector<ConfusionAlternative> alternatives);

  const std::vector<ConfusionAlternative>* find(char32_t key) const;
  // True if cp is a key or any alternative.
  bool mentions(char32_t cp) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<char32_t, std::vector<ConfusionAlternative>>& entries() const {
    return entries_;
  }

 private:
  std::map<char32_t, std::vector<ConfusionAlternative>> entries_;
};

struct NoiseConfig {
  double p_delete = 0.02;
  double p_swap = 0.02;
  double p_substitute = 0.10;
  double p_verse = 1.0;
  char32_t lacuna_symbol = U'#';
  std::uint64_t seed = 0;

  // Throws kInvalidNoiseConfig.
  void validate(const ConfusionMap& map) const;
};

// chars_swapped counts swap operations (each moves two characters) and
// swap_positions the positions that were eligible to start one.
struct NoiseReport {
  std::uint64_t verses_total = 0;
  std::uint64_t verses_corrupted = 0;
  std::uint64_t chars_seen = 0;
  std::uint64_t chars_deleted = 0;
  std::uint64_t chars_swapped = 0;
  std::uint64_t chars_substituted = 0;
  std::uint64_t chars_substitutable = 0;
  std::uint64_t swap_positions = 0;

  NoiseReport& operator+=(const NoiseReport& o);
  bool operator==(const NoiseReport&) const = default;
};

struct CorruptedVerse {
  std::string text;
  NoiseReport delta;
};

// Runs the three degradation passes over the verse's code points, in order:
//
//  1. substitution: one draw u per character; a confusion-map key with
//     u < p_substitute becomes the alternative selected by u / p_substitute
//     against the cumulative normalized weights.
//  2. transposition: one draw per position, left to right; an eligible
//     position i (i + 1 < n, and i was not just swapped into) with
//     u < p_swap swaps characters i and i + 1. Ineligible positions still
//     consume their draw.
//  3. lacuna: one draw per character; u < p_delete replaces it with the
//     lacuna symbol.
//
// Each pass consumes exactly n draws from the verse's "corrupt" stream, so
// the output length in code points equals the input length.
CorruptedVerse corrupt_verse(std::string_view text, const NoiseConfig& cfg,
                             const ConfusionMap& map, const VerseId& verse_key);

struct NoisyPair {
  AlignedPair pair;
  bool noise_applied = false;

  bool operator==(const NoisyPair&) const = default;
};

struct CorpusVariant {
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::vector<NoisyPair> pairs;
  NoiseReport report;
};

// A pair is corrupted iff the first draw of its verse's "select" stream is
// below p_verse. Reference texts are never touched. Versions of one verse
// share the decision and the realization.
CorpusVariant corrupt_corpus(const std::vector<AlignedPair>& pairs,
                             const NoiseConfig& cfg, const ConfusionMap& map,
                             unsigned threads = 1);

// One variant per rate, each seeded with rate_seed(base.seed, rate).
std::vector<CorpusVariant> sweep(const std::vector<AlignedPair>& pairs,
                                 const NoiseConfig& base, const ConfusionMap& map,
                                 const std::vector<double>& rates,
                                 unsigned threads = 1);

}  // namespace forge
