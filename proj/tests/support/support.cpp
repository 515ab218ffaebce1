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


#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "corpusforge/utf8.hpp"
#include "corpusforge/verse_id.hpp"

namespace forge::testing {
namespace fs = std::filesystem;

fs::path fixture(const std::string& name) { return fs::path(FORGE_FIXTURE_DIR) / name; }

TempDir::TempDir() {
  static std::mt19937_64 rng{std::random_device{}()};
  for (;;) {
    path_ = fs::temp_directory_path() / ("forge-test-" + std::to_string(rng()));
    if (fs::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string random_coptic(std::mt19937_64& rng, std::size_t letters) {
  static const std::u32string alphabet =
      U"ⲁⲃⲅⲇⲉⲍⲏⲑⲓⲕⲗⲙⲛⲝⲟⲡⲣⲥⲧⲩⲫⲭⲯⲱϣϥϧϩϫϭϯ";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> word(3, 8);
  std::u32string out;
  int left = word(rng);
  for (std::size_t i = 0; i < letters; ++i) {
    if (left-- == 0) {
      out.push_back(U' ');
      left = word(rng);
    }
    out.push_back(alphabet[pick(rng)]);
  }
  return utf8::encode(out);
}

std::vector<AlignedPair> synthetic_corpus(std::mt19937_64& rng, std::size_t verses,
                                          const std::vector<std::string>& versions,
                                          std::size_t min_letters, std::size_t max_letters) {
  const auto& books = BookNameTable::standard();
  std::uniform_int_distribution<std::size_t> len(min_letters, max_letters);
  std::vector<AlignedPair> out;
  for (std::size_t i = 0; i < verses; ++i) {
    const auto& entry = books.entries()[i % books.size()];
    auto id = make_verse_id(books, entry.canonical, static_cast<std::uint32_t>(1 + i / 1000),
                            static_cast<std::uint32_t>(1 + (i / books.size()) % 1000));
    const std::string source = random_coptic(rng, len(rng));
    for (const auto& v : versions) {
      out.push_back({id, source, "reference " + std::to_string(i) + " " + v, v});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const AlignedPair& a, const AlignedPair& b) { return a.id < b.id; });
  return out;
}

OracleResult meteor_oracle(const std::string& hyp_text, const std::string& ref_text, double alpha,
                           double beta, double gamma) {
  auto tokens = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (std::getline(in, t, ' ')) {
      if (t.empty()) continue;
      for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out.push_back(t);
    }
    return out;
  };
  const auto hyp = tokens(hyp_text);
  const auto ref = tokens(ref_text);

  OracleResult best;
  std::size_t best_chunks = SIZE_MAX;
  std::vector<int> assign(hyp.size(), -1);
  std::vector<bool> used(ref.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == hyp.size()) {
      std::size_t m = 0, chunks = 0;
      for (std::size_t k = 0; k < hyp.size(); ++k) {
        if (assign[k] < 0) continue;
        ++m;
        if (k == 0 || assign[k - 1] < 0 || assign[k - 1] + 1 != assign[k]) ++chunks;
      }
      if (m > best.matches || (m == best.matches && chunks < best_chunks)) {
        best.matches = m;
        best_chunks = chunks;
      }
      return;
    }
    rec(i + 1);
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (used[j] || ref[j] != hyp[i]) continue;
      used[j] = true;
      assign[i] = static_cast<int>(j);
      rec(i + 1);
      assign[i] = -1;
      used[j] = false;
    }
  };
  rec(0);
  if (best.matches == 0) return best;
  best.chunks = best_chunks;
  const double m = static_cast<double>(best.matches);
  const double p = m / static_cast<double>(hyp.size());
  const double r = m / static_cast<double>(ref.size());
  const double f = p * r / (alpha * p + (1 - alpha) * r);
  best.score = f * (1 - gamma * std::pow(static_cast<double>(best.chunks) / m, beta));
  return best;
}

}  // namespace forge::testing
