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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace forge {

// Canonical (book, chapter, verse) key. book_order is the book's position in
// the BookNameTable that produced it and only drives ordering.
struct VerseId {
  std::string book;
  int book_order = 0;
  std::uint32_t chapter = 1;
  std::uint32_t verse = 1;

  bool operator==(const VerseId& o) const {
    return book == o.book && chapter == o.chapter && verse == o.verse;
  }
  std::strong_ordering operator<=>(const VerseId& o) const {
    if (auto c = book_order <=> o.book_order; c != 0) return c;
    if (auto c = book.compare(o.book) <=> 0; c != 0) return c;
    if (auto c = chapter <=> o.chapter; c != 0) return c;
    return verse <=> o.verse;
  }

  // "Book C:V"
  std::string to_string() const;
};

struct VerseIdHash {
  std::size_t operator()(const VerseId& id) const noexcept;
};

struct BookEntry {
  std::string canonical;
  std::vector<std::string> aliases;
  int sort_order = 0;
};

// Maps raw book labels (canonical names and aliases) to canonical names.
// Matching ignores ASCII case, spaces, '.', '_' and '-'.
class BookNameTable {
 public:
  struct Resolved {
    std::string canonical;
    int sort_order;
  };

  // TSV rows: canonical_name, alias1..aliasN, sort_order. '#' lines are
  // comments; a header row starting with "canonical_name" is skipped.
  static BookNameTable parse(std::string_view tsv);
  static BookNameTable load(const std::filesystem::path& path);

  // The shipped 66-book table.
  static const BookNameTable& standard();

  std::optional<Resolved> resolve(std::string_view label) const;
  bool is_canonical(std::string_view name) const;

  const std::vector<BookEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<BookEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_key_;
};

std::string normalize_book_label(std::string_view label);

// Accepts "Book C:V" and "Book_C_V"; whitespace runs and leading zeros are
// tolerated. Verse ranges and sub-verse segments are rejected.
// Throws kUnparseableReference or kUnknownBook.
VerseId canonicalize_verse_id(std::string_view raw, const BookNameTable& books);

// Builds an id from parts; the book label is resolved through the table.
VerseId make_verse_id(const BookNameTable& books, std::string_view book,
                      std::uint32_t chapter, std::uint32_t verse);

}  // namespace forge
