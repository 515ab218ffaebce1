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


#include "corpusforge/romanizer.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/resources.hpp"
#include "corpusforge/utf8.hpp"

namespace forge {
namespace {

constexpr std::string_view kDeletion = "<DEL>";

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidTableEntry, what);
}

char32_t parse_code_point(std::string_view field) {
  std::string_view hex = field;
  if (hex.starts_with("U+") || hex.starts_with("u+")) hex.remove_prefix(2);
  if (hex.empty() || hex.size() > 6) invalid("malformed code point '" + std::string(field) + "'");
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
  if (ec != std::errc{} || ptr != hex.data() + hex.size()) {
    invalid("malformed code point '" + std::string(field) + "'");
  }
  if (value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
    invalid("code point out of range '" + std::string(field) + "'");
  }
  return static_cast<char32_t>(value);
}

}  // namespace

UnmappedPolicy UnmappedPolicy::parse(std::string_view spec) {
  if (spec == "keep") return keep();
  if (spec == "drop") return drop();
  if (spec == "replace") return replace_with('?');
  if (spec.starts_with("replace:") && spec.size() == 9) {
    char c = spec[8];
    if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7F) {
      throw Error(ErrorCode::kInvalidArgument, "replacement must be printable ASCII");
    }
    return replace_with(c);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unmapped policy must be keep, drop, replace or replace:<c>, got '" +
                  std::string(spec) + "'");
}

std::pair<char32_t, std::string> RomanizationTable::parse_row(std::string_view row) {
  if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
  auto tab = row.find('\t');
  if (tab == std::string_view::npos) invalid("expected two tab separated columns: '" + std::string(row) + "'");
  std::string_view key = row.substr(0, tab);
  std::string_view value = row.substr(tab + 1);
  if (value.find('\t') != std::string_view::npos) invalid("too many columns: '" + std::string(row) + "'");

  char32_t cp = parse_code_point(key);
  if (cp < 0x80) invalid("ASCII code point " + std::string(key) + " cannot be remapped");
  if (value == kDeletion) return {cp, std::string()};
  if (value.empty()) invalid("empty output for " + std::string(key) + " (use <DEL>)");
  for (unsigned char c : value) {
    if (c < 0x20 || c >= 0x7F) invalid("output for " + std::string(key) + " is not printable ASCII");
  }
  return {cp, std::string(value)};
}

bool RomanizationTable::requires_coverage(char32_t cp) {
  return (cp >= 0x2C80 && cp <= 0x2CF3) || (cp >= 0x2CF9 && cp <= 0x2CFF) ||
         (cp >= 0x03E2 && cp <= 0x03EF);
}

RomanizationTable RomanizationTable::parse(std::string_view tsv, bool require_coverage) {
  RomanizationTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    auto nl = tsv.find('\n', pos);
    std::string_view line = tsv.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? tsv.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    try {
      auto [cp, out] = parse_row(line);
      if (!table.entries_.emplace(cp, std::move(out)).second) {
        invalid("duplicate entry");
      }
    } catch (const Error& e) {
      invalid("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (require_coverage) {
    for (char32_t cp = 0x03E2; cp <= 0x2CFF; ++cp) {
      if (requires_coverage(cp) && !table.entries_.contains(cp)) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
        invalid(std::string("table does not cover ") + buf);
      }
    }
  }
  return table;
}

RomanizationTable RomanizationTable::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

const RomanizationTable& RomanizationTable::standard() {
  static const RomanizationTable table = parse(resources::romanization_tsv());
  return table;
}

void RomanizationTable::set(char32_t cp, std::string ascii) {
  if (cp < 0x80) invalid("ASCII code points cannot be remapped");
  if (!utf8::is_ascii(ascii)) invalid("output must be ASCII");
  entries_[cp] = std::move(ascii);
}

std::optional<std::string_view> RomanizationTable::lookup(char32_t cp) const {
  auto it = entries_.find(cp);
  if (it == entries_.end()) return std::nullopt;
  return std::string_view(it->second);
}

std::size_t RomanizationTable::max_entry_length() const {
  std::size_t n = 1;
  for (const auto& [cp, out] : entries_) n = std::max(n, out.size());
  return n;
}

std::string romanize(std::string_view text, const RomanizationTable& table) {
  std::string out;
  out.reserve(text.size());
  const auto policy = table.policy();
  for (char32_t cp : utf8::decode(text)) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
      continue;
    }
    if (auto mapped = table.lookup(cp)) {
      out.append(*mapped);
      continue;
    }
    switch (policy.kind) {
      case UnmappedPolicy::Kind::kKeep: utf8::append(out, cp); break;
      case UnmappedPolicy::Kind::kDrop: break;
      case UnmappedPolicy::Kind::kReplace: out.push_back(policy.replacement); break;
    }
  }
  return out;
}

}  // namespace forge
