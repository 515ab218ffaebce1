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


#include "corpusforge/split.hpp"

#include <unordered_set>

#include "corpusforge/error.hpp"
#include "corpusforge/utf8.hpp"

namespace forge {

SplitConfig SplitConfig::from_list(std::string_view csv, const BookNameTable& books) {
  SplitConfig cfg;
  cfg.test_books.clear();
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    auto label = utf8::trim(csv.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (!label.empty()) {
      auto resolved = books.resolve(label);
      if (!resolved) throw Error(ErrorCode::kUnknownBook, "test book '" + label + "'");
      cfg.test_books.insert(resolved->canonical);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  cfg.validate(books);
  return cfg;
}

void SplitConfig::validate(const BookNameTable& books) const {
  if (test_books.empty()) throw Error(ErrorCode::kInvalidArgument, "no test books");
  for (const auto& b : test_books) {
    if (!books.is_canonical(b)) throw Error(ErrorCode::kUnknownBook, "test book '" + b + "'");
  }
}

SplitResult split(const std::vector<AlignedPair>& pairs, const SplitConfig& cfg) {
  SplitResult result;
  for (const auto& p : pairs) {
    (cfg.test_books.contains(p.id.book) ? result.test : result.train).push_back(p);
  }
  result.empty_test = result.test.empty();
  return result;
}

bool verify_no_leakage(const std::vector<AlignedPair>& train,
                       const std::vector<AlignedPair>& test) {
  std::unordered_set<VerseId, VerseIdHash> ids;
  std::unordered_set<std::string> books;
  for (const auto& p : train) {
    ids.insert(p.id);
    books.insert(p.id.book);
  }
  for (const auto& p : test) {
    if (ids.contains(p.id) || books.contains(p.id.book)) return false;
  }
  return true;
}

}  // namespace forge
