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
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/verse_id.hpp"

namespace forge {

struct VerseRecord {
  VerseId id;
  std::string text;
  std::string source_doc;
  std::uint32_t token_count = 0;

  bool operator==(const VerseRecord&) const = default;
};

// One PAULA document set: a token file, a mark file whose marks reference
// token ids, and a feat file attaching verse ids to marks.
struct PaulaDocumentSet {
  std::string doc_id;
  std::string tokens_xml;
  std::string marks_xml;
  std::string feats_xml;
};

// A verse annotation that was dropped in lenient mode.
struct SkippedAnnotation {
  std::string doc_id;
  std::string feat_ref;
  std::string value;
  std::string reason;
};

struct ParseOptions {
  // Strict mode throws on the first dangling reference or unparseable verse
  // id. Lenient mode drops the annotation and reports it instead.
  bool lenient = false;
};

struct ParseResult {
  std::vector<VerseRecord> records;
  std::vector<SkippedAnnotation> skipped;
};

ParseResult parse_document_set(const PaulaDocumentSet& docs,
                               const BookNameTable& books,
                               const ParseOptions& options = {});

std::vector<VerseRecord> parse_document_set(std::string_view tokens_xml,
                                            std::string_view marks_xml,
                                            std::string_view feats_xml,
                                            const BookNameTable& books);

// Merges records from several document sets. Sorted by VerseId; throws
// kDuplicateVerseId when two sets contain the same verse.
std::vector<VerseRecord> merge_records(std::vector<std::vector<VerseRecord>> parts);

}  // namespace forge
