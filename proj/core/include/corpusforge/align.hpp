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
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/paula.hpp"
#include "corpusforge/verse_id.hpp"

namespace forge {

// A modern-language Bible version keyed by verse. Empty texts are kept here
// and removed during cleaning.
struct ReferenceVersion {
  std::string label;
  std::map<VerseId, std::string> verses;
};

struct AlignedPair {
  VerseId id;
  std::string source_text;
  std::string reference_text;
  std::string version;

  bool operator==(const AlignedPair&) const = default;
};

enum class RemovalReason {
  kMissingSource,
  kMissingReference,
  kEllipsisOnlySource,
  kBlankReference,
};

std::string_view to_string(RemovalReason reason);
RemovalReason parse_removal_reason(std::string_view name);

struct RemovalRecord {
  VerseId id;
  std::string version;
  RemovalReason reason;
  std::string original_source;
  std::string original_reference;

  bool operator==(const RemovalRecord&) const = default;
};

// Re-evaluates the removal predicate against the stored originals.
bool reason_holds(const RemovalRecord& record);

// "Book C:V<TAB>text" per line; throws kDuplicateVerseId and
// kUnparseableReference (line number included in the message).
ReferenceVersion parse_reference_tsv(std::string label, std::string_view tsv,
                                     const BookNameTable& books);
ReferenceVersion load_reference_tsv(std::string label,
                                    const std::filesystem::path& path,
                                    const BookNameTable& books);

struct AlignResult {
  std::vector<AlignedPair> pairs;
  std::vector<RemovalRecord> removed;
};

// Joins source verses with every version on VerseId. Pairs come out in
// (source order, version order); removals are sorted by (id, version).
AlignResult align(const std::vector<VerseRecord>& source,
                  const std::vector<ReferenceVersion>& versions);

struct CleanResult {
  std::vector<AlignedPair> kept;
  std::vector<RemovalRecord> removed;
};

// Only '.', '[', ']', U+2026 and whitespace, with at least one dot or U+2026.
bool is_ellipsis_only(std::string_view text);
bool is_blank(std::string_view text);
// Repeatedly removes a leading "(" digits ("." digits)* ")" and the
// whitespace after it.
std::string strip_leading_annotations(std::string_view text);

CleanResult clean(const std::vector<AlignedPair>& pairs);

// Removal logs are written sorted by (id, version).
void sort_removals(std::vector<RemovalRecord>& removed);

struct StatReport {
  std::size_t total_pairs = 0;
  std::size_t distinct_verses = 0;
  std::size_t distinct_books = 0;
  std::map<std::string, std::size_t> per_version;

  bool operator==(const StatReport&) const = default;
};

StatReport corpus_stats(const std::vector<AlignedPair>& pairs);

}  // namespace forge
