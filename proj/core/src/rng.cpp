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


#include "corpusforge/rng.hpp"

#include <cmath>
#include <string_view>
#include <vector>

namespace forge {
namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::string_view domain_tag(StreamDomain d) {
  return d == StreamDomain::kCorrupt ? "corrupt" : "select";
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, StreamDomain domain, const VerseId& id) {
  std::vector<std::uint8_t> buf;
  buf.reserve(32 + id.book.size());
  put_le(buf, seed, 8);
  for (char c : domain_tag(domain)) buf.push_back(static_cast<std::uint8_t>(c));
  buf.push_back(0x1F);
  for (char c : id.book) buf.push_back(static_cast<std::uint8_t>(c));
  buf.push_back(0x1F);
  put_le(buf, id.chapter, 4);
  put_le(buf, id.verse, 4);
  return mix64(fnv1a64(buf));
}

std::uint64_t rate_seed(std::uint64_t seed, double rate) {
  auto ppm = static_cast<std::uint64_t>(std::llround(rate * 1e6));
  return mix64(seed + 0x9E3779B97F4A7C15ULL * (ppm + 1));
}

}  // namespace forge
