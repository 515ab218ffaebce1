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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace forge {

// What romanize() does with a non-ASCII code point that has no table entry.
struct UnmappedPolicy {
  enum class Kind { kKeep, kDrop, kReplace };
  Kind kind = Kind::kReplace;
  char replacement = '?';

  static UnmappedPolicy keep() { return {Kind::kKeep, 0}; }
  static UnmappedPolicy drop() { return {Kind::kDrop, 0}; }
  static UnmappedPolicy replace_with(char c) { return {Kind::kReplace, c}; }

  // "keep", "drop", "replace" or "replace:<c>".
  static UnmappedPolicy parse(std::string_view spec);
};

// Code point to ASCII transliteration. An empty mapped string is an explicit
// deletion (<DEL> in the file format). Keys are always non-ASCII so ASCII
// text, including the lacuna symbol, passes through untouched.
class RomanizationTable {
 public:
  RomanizationTable() = default;

  // Hex code point TAB (ASCII output | <DEL>), '#' comment lines.
  // With require_coverage, every assigned code point of the Coptic block and
  // of U+03E2..U+03EF must be mapped.
  static RomanizationTable parse(std::string_view tsv, bool require_coverage = true);
  static RomanizationTable load(const std::filesystem::path& path);
  static const RomanizationTable& standard();

  // Parses a single data row, throws kInvalidTableEntry.
  static std::pair<char32_t, std::string> parse_row(std::string_view row);

  void set(char32_t cp, std::string ascii);
  std::optional<std::string_view> lookup(char32_t cp) const;

  UnmappedPolicy policy() const { return policy_; }
  void set_policy(UnmappedPolicy p) { policy_ = p; }

  std::size_t size() const { return entries_.size(); }
  std::size_t max_entry_length() const;
  const std::map<char32_t, std::string>& entries() const { return entries_; }

  // Code points the coverage check requires.
  static bool requires_coverage(char32_t cp);

 private:
  std::map<char32_t, std::string> entries_;
  UnmappedPolicy policy_;
};

std::string romanize(std::string_view text, const RomanizationTable& table);

}  // namespace forge
