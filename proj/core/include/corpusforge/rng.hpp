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
#include <random>
#include <span>

#include "corpusforge/verse_id.hpp"

namespace forge {

// Deterministic per-verse random streams.
//
// Every verse gets its own std::mt19937_64 engine (whose output sequence is
// fixed by the C++ standard), seeded with
//
//   key = mix64(fnv1a64(le64(seed) ++ domain ++ 0x1F ++ book ++ 0x1F
//                       ++ le32(chapter) ++ le32(verse)))
//
// where domain is the ASCII tag "corrupt" or "select", book is the canonical
// book name in UTF-8, fnv1a64 is 64-bit FNV-1a (offset basis
// 0xcbf29ce484222325, prime 0x100000001b3) and mix64 is the SplitMix64
// finalizer. A uniform draw is (engine() >> 11) * 2^-53, in [0, 1).
//
// Because streams depend only on (seed, domain, verse), corrupting verses in
// any order or on any number of threads yields the same bytes.
enum class StreamDomain { kCorrupt, kSelect };

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::uint64_t mix64(std::uint64_t x);
std::uint64_t stream_key(std::uint64_t seed, StreamDomain domain, const VerseId& id);

// Sub-seed for one rate of a sweep:
//   mix64(seed + 0x9E3779B97F4A7C15 * (round(rate * 1e6) + 1))
std::uint64_t rate_seed(std::uint64_t seed, double rate);

class VerseStream {
 public:
  explicit VerseStream(std::uint64_t key) : engine_(key) {}
  VerseStream(std::uint64_t seed, StreamDomain domain, const VerseId& id)
      : engine_(stream_key(seed, domain, id)) {}

  double uniform() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace forge
