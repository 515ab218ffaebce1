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


#include "corpusforge/align.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/utf8.hpp"

namespace forge {

std::string_view to_string(RemovalReason reason) {
  switch (reason) {
    case RemovalReason::kMissingSource: return "MissingSource";
    case RemovalReason::kMissingReference: return "MissingReference";
    case RemovalReason::kEllipsisOnlySource: return "EllipsisOnlySource";
    case RemovalReason::kBlankReference: return "BlankReference";
  }
  return "Unknown";
}

RemovalReason parse_removal_reason(std::string_view name) {
  for (auto r : {RemovalReason::kMissingSource, RemovalReason::kMissingReference,
                 RemovalReason::kEllipsisOnlySource, RemovalReason::kBlankReference}) {
    if (to_string(r) == name) return r;
  }
  throw Error(ErrorCode::kInvalidRecord, "unknown removal reason '" + std::string(name) + "'");
}

bool is_blank(std::string_view text) {
  for (char32_t cp : utf8::decode(text)) {
    if (!utf8::is_space(cp)) return false;
  }
  return true;
}

bool is_ellipsis_only(std::string_view text) {
  bool dot = false;
  for (char32_t cp : utf8::decode(text)) {
    if (cp == U'.' || cp == U'\u2026') {
      dot = true;
    } else if (cp != U'[' && cp != U']' && !utf8::is_space(cp)) {
      return false;
    }
  }
  return dot;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Length of a "(" digits ("." digits)* ")" marker at the start of s, or 0.
std::size_t annotation_length(std::string_view s) {
  if (s.empty() || s[0] != '(') return 0;
  std::size_t i = 1;
  while (true) {
    std::size_t start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == start) return 0;
    if (i < s.size() && s[i] == '.') {
      ++i;
      continue;
    }
    break;
  }
  if (i < s.size() && s[i] == ')') return i + 1;
  return 0;
}

}  // namespace

std::string strip_leading_annotations(std::string_view text) {
  while (auto n = annotation_length(text)) {
    text.remove_prefix(n);
    // Trailing whitespace after the marker, ASCII or Unicode.
    std::u32string rest = utf8::decode(text);
    std::size_t skip = 0;
    while (skip < rest.size() && utf8::is_space(rest[skip])) ++skip;
    if (skip == 0) continue;
    std::string prefix = utf8::encode(std::u32string_view(rest).substr(0, skip));
    text.remove_prefix(std::min(prefix.size(), text.size()));
  }
  return std::string(text);
}

bool reason_holds(const RemovalRecord& r) {
  switch (r.reason) {
    case RemovalReason::kMissingSource: return is_blank(r.original_source);
    case RemovalReason::kMissingReference: return is_blank(r.original_reference);
    case RemovalReason::kEllipsisOnlySource: return is_ellipsis_only(r.original_source);
    case RemovalReason::kBlankReference:
      return is_blank(strip_leading_annotations(r.original_reference));
  }
  return false;
}

ReferenceVersion parse_reference_tsv(std::string label, std::string_view tsv,
                                     const BookNameTable& books) {
  if (label.empty()) throw Error(ErrorCode::kInvalidArgument, "version label is empty");
  ReferenceVersion version;
  version.label = std::move(label);
  if (tsv.starts_with("\xEF\xBB\xBF")) tsv.remove_prefix(3);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    auto nl = tsv.find('\n', pos);
    std::string_view line = tsv.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? tsv.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto tab = line.find('\t');
    std::string_view key = line.substr(0, tab);
    std::string_view text = tab == std::string_view::npos ? std::string_view{} : line.substr(tab + 1);
    VerseId id;
    try {
      id = canonicalize_verse_id(key, books);
    } catch (const Error& e) {
      throw Error(e.code(), version.label + " line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!version.verses.emplace(id, std::string(text)).second) {
      throw Error(ErrorCode::kDuplicateVerseId,
                  version.label + " line " + std::to_string(line_no) + ": " + id.to_string());
    }
  }
  return version;
}

ReferenceVersion load_reference_tsv(std::string label, const std::filesystem::path& path,
                                    const BookNameTable& books) {
  return parse_reference_tsv(std::move(label), read_file(path), books);
}

void sort_removals(std::vector<RemovalRecord>& removed) {
  std::stable_sort(removed.begin(), removed.end(), [](const RemovalRecord& a, const RemovalRecord& b) {
    if (a.id != b.id) return a.id < b.id;
    return a.version < b.version;
  });
}

AlignResult align(const std::vector<VerseRecord>& source,
                  const std::vector<ReferenceVersion>& versions) {
  std::set<std::string> labels;
  for (const auto& v : versions) {
    if (v.label.empty()) throw Error(ErrorCode::kInvalidArgument, "version label is empty");
    if (!labels.insert(v.label).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate version label '" + v.label + "'");
    }
  }

  AlignResult result;
  std::unordered_set<VerseId, VerseIdHash> source_ids;
  for (const auto& rec : source) {
    source_ids.insert(rec.id);
    for (const auto& version : versions) {
      auto it = version.verses.find(rec.id);
      if (it == version.verses.end()) {
        result.removed.push_back(
            {rec.id, version.label, RemovalReason::kMissingReference, rec.text, ""});
      } else if (is_blank(rec.text)) {
        result.removed.push_back(
            {rec.id, version.label, RemovalReason::kMissingSource, rec.text, it->second});
      } else {
        result.pairs.push_back({rec.id, rec.text, it->second, version.label});
      }
    }
  }
  for (const auto& version : versions) {
    for (const auto& [id, text] : version.verses) {
      if (!source_ids.contains(id)) {
        result.removed.push_back({id, version.label, RemovalReason::kMissingSource, "", text});
      }
    }
  }
  sort_removals(result.removed);
  return result;
}

CleanResult clean(const std::vector<AlignedPair>& pairs) {
  CleanResult result;
  for (const auto& pair : pairs) {
    auto remove = [&](RemovalReason reason) {
      result.removed.push_back(
          {pair.id, pair.version, reason, pair.source_text, pair.reference_text});
    };
    if (is_blank(pair.source_text)) {
      remove(RemovalReason::kMissingSource);
      continue;
    }
    if (is_ellipsis_only(pair.source_text)) {
      remove(RemovalReason::kEllipsisOnlySource);
      continue;
    }
    std::string reference = strip_leading_annotations(pair.reference_text);
    if (is_blank(reference)) {
      remove(RemovalReason::kBlankReference);
      continue;
    }
    AlignedPair kept = pair;
    kept.reference_text = std::move(reference);
    result.kept.push_back(std::move(kept));
  }
  sort_removals(result.removed);
  return result;
}

StatReport corpus_stats(const std::vector<AlignedPair>& pairs) {
  StatReport report;
  std::set<VerseId> verses;
  std::set<std::string> books;
  for (const auto& p : pairs) {
    verses.insert(p.id);
    books.insert(p.id.book);
    ++report.per_version[p.version];
  }
  report.total_pairs = pairs.size();
  report.distinct_verses = verses.size();
  report.distinct_books = books.size();
  return report;
}

}  // namespace forge
