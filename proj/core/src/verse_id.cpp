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


#include "corpusforge/verse_id.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "corpusforge/error.hpp"
#include "corpusforge/resources.hpp"
#include "corpusforge/utf8.hpp"

namespace forge {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Positive decimal with optional leading zeros.
std::optional<std::uint32_t> parse_positive(std::string_view s) {
  if (!is_digits(s)) return std::nullopt;
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) return std::nullopt;
  return value;
}

std::string_view trim_ascii(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                        s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void unparseable(std::string_view raw, std::string_view why) {
  throw Error(ErrorCode::kUnparseableReference,
              "'" + std::string(raw) + "': " + std::string(why));
}

}  // namespace

std::string VerseId::to_string() const {
  return book + " " + std::to_string(chapter) + ":" + std::to_string(verse);
}

std::size_t VerseIdHash::operator()(const VerseId& id) const noexcept {
  std::size_t h = std::hash<std::string>{}(id.book);
  h ^= (static_cast<std::size_t>(id.chapter) << 20) + id.verse + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  return h;
}

std::string normalize_book_label(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  for (char c : label) {
    if (c == ' ' || c == '.' || c == '_' || c == '-' || c == '\t') continue;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  return out;
}

BookNameTable BookNameTable::parse(std::string_view tsv) {
  BookNameTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= tsv.size()) {
    auto nl = tsv.find('\n', pos);
    std::string_view line = tsv.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? tsv.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim_ascii(line).empty() || line.front() == '#') continue;

    auto fields = split_tabs(line);
    if (trim_ascii(fields[0]) == "canonical_name") continue;
    auto where = "line " + std::to_string(line_no);
    if (fields.size() < 2) {
      throw Error(ErrorCode::kInvalidBookTable, where + ": expected name and sort order");
    }
    BookEntry entry;
    entry.canonical = std::string(trim_ascii(fields.front()));
    auto order_field = trim_ascii(fields.back());
    int order = 0;
    auto [ptr, ec] = std::from_chars(order_field.data(), order_field.data() + order_field.size(),
                                     order);
    if (ec != std::errc{} || ptr != order_field.data() + order_field.size()) {
      throw Error(ErrorCode::kInvalidBookTable,
                  where + ": bad sort order '" + std::string(order_field) + "'");
    }
    entry.sort_order = order;
    if (entry.canonical.empty()) {
      throw Error(ErrorCode::kInvalidBookTable, where + ": empty canonical name");
    }
    for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
      auto alias = trim_ascii(fields[i]);
      if (!alias.empty()) entry.aliases.emplace_back(alias);
    }

    const std::size_t index = table.entries_.size();
    auto register_key = [&](std::string_view label) {
      auto key = normalize_book_label(label);
      if (key.empty()) {
        throw Error(ErrorCode::kInvalidBookTable, where + ": empty label");
      }
      auto [it, inserted] = table.by_key_.emplace(key, index);
      if (!inserted && it->second != index) {
        throw Error(ErrorCode::kInvalidBookTable,
                    where + ": label '" + std::string(label) + "' already names " +
                        table.entries_[it->second].canonical);
      }
    };
    table.entries_.push_back(entry);
    register_key(entry.canonical);
    for (const auto& alias : entry.aliases) register_key(alias);
  }
  if (table.entries_.empty()) {
    throw Error(ErrorCode::kInvalidBookTable, "no books");
  }
  return table;
}

BookNameTable BookNameTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const BookNameTable& BookNameTable::standard() {
  static const BookNameTable table = parse(resources::books_tsv());
  return table;
}

std::optional<BookNameTable::Resolved> BookNameTable::resolve(std::string_view label) const {
  auto it = by_key_.find(normalize_book_label(label));
  if (it == by_key_.end()) return std::nullopt;
  const auto& e = entries_[it->second];
  return Resolved{e.canonical, e.sort_order};
}

bool BookNameTable::is_canonical(std::string_view name) const {
  auto r = resolve(name);
  return r && r->canonical == name;
}

VerseId canonicalize_verse_id(std::string_view raw, const BookNameTable& books) {
  std::string_view s = trim_ascii(raw);
  if (s.empty()) unparseable(raw, "empty reference");

  std::string_view book, chapter, verse;
  if (auto colon = s.rfind(':'); colon != std::string_view::npos) {
    // "Book C:V"
    verse = trim_ascii(s.substr(colon + 1));
    auto head = s.substr(0, colon);
    auto space = head.find_last_of(" \t");
    if (space == std::string_view::npos) unparseable(raw, "missing space before chapter");
    chapter = trim_ascii(head.substr(space + 1));
    book = trim_ascii(head.substr(0, space));
  } else {
    // "Book_C_V"
    auto last = s.rfind('_');
    if (last == std::string_view::npos || last == 0) unparseable(raw, "unknown format");
    auto prev = s.rfind('_', last - 1);
    if (prev == std::string_view::npos) unparseable(raw, "unknown format");
    verse = s.substr(last + 1);
    chapter = s.substr(prev + 1, last - prev - 1);
    book = s.substr(0, prev);
  }

  if (book.empty()) unparseable(raw, "missing book");
  auto c = parse_positive(chapter);
  if (!c) unparseable(raw, "chapter must be a positive integer");
  auto v = parse_positive(verse);
  if (!v) unparseable(raw, "verse must be a positive integer (ranges are not supported)");

  auto resolved = books.resolve(book);
  if (!resolved) {
    throw Error(ErrorCode::kUnknownBook, "'" + std::string(book) + "' in '" + std::string(raw) + "'");
  }
  return VerseId{resolved->canonical, resolved->sort_order, *c, *v};
}

VerseId make_verse_id(const BookNameTable& books, std::string_view book,
                      std::uint32_t chapter, std::uint32_t verse) {
  if (chapter == 0 || verse == 0) {
    throw Error(ErrorCode::kUnparseableReference, "chapter and verse must be >= 1");
  }
  auto resolved = books.resolve(book);
  if (!resolved) throw Error(ErrorCode::kUnknownBook, "'" + std::string(book) + "'");
  return VerseId{resolved->canonical, resolved->sort_order, chapter, verse};
}

}  // namespace forge
