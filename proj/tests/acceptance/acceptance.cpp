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


// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpusforge/align.hpp"
#include "corpusforge/corpus_io.hpp"
#include "corpusforge/drop.hpp"
#include "corpusforge/meteor.hpp"
#include "corpusforge/noise.hpp"
#include "corpusforge/romanizer.hpp"
#include "corpusforge/split.hpp"
#include "forge_cli/cli.hpp"
#include "support.hpp"

using namespace forge;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and sizes.
constexpr double kDropTolerance = 0.05;          // percentage points
constexpr double kDropBudgetSeconds = 1.0;
constexpr double kNoiseSigmas = 3.0;
constexpr std::uint64_t kNoiseMinSubstitutable = 100'000;
constexpr double kNoiseBudgetSeconds = 10.0;
constexpr std::size_t kNoiseVerses = 6000;
constexpr std::size_t kSweepVerses = 1000;
constexpr int kMeteorCases = 1000;
constexpr double kMeteorIdentical = 0.9995;
constexpr double kMeteorIdenticalTolerance = 1e-9;
constexpr int kCleanRounds = 500;
constexpr int kSplitCorpora = 1000;
constexpr int kRomanizerStrings = 10'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

Outcome drop_table_reproduction() {
  const auto t0 = Clock::now();
  const auto scores_csv = read_file(forge::testing::fixture("robustness_scores.csv"));
  std::size_t rows = 0;
  for (char c : scores_csv) rows += c == '\n';
  rows -= 1;  // header
  auto matrix = drop_table(ScoreTable::parse_csv(scores_csv));
  const double elapsed = seconds_since(t0);

  std::istringstream expected(read_file(forge::testing::fixture("robustness_drop.csv")));
  std::string line;
  std::getline(expected, line);
  const auto header = split_csv_line(line);
  std::size_t checked = 0;
  std::vector<std::string> off;
  while (std::getline(expected, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    const RatePpm train = parse_rate(f[1]);
    for (std::size_t c = 2; c < f.size(); ++c) {
      ++checked;
      const double want = std::stod(f[c]);
      const auto* cell = matrix.find(f[0], train, header[c]);
      if (cell == nullptr) {
        off.push_back(f[0] + "/" + f[1] + "/" + header[c] + " missing");
        continue;
      }
      if (std::fabs(cell->drop - want) > kDropTolerance + 1e-12) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s/%s/%s got %.1f (exact %.4f) want %s", f[0].c_str(),
                      f[1].c_str(), header[c].c_str(), cell->drop,
                      relative_drop_exact(cell->clean, cell->noisy), f[c].c_str());
        off.push_back(buf);
      }
    }
  }
  Outcome o;
  o.pass = rows == 50 && checked == 40 && matrix.cells.size() == 40 && off.empty() &&
           elapsed < kDropBudgetSeconds;
  o.detail = std::to_string(rows) + " score rows, " + std::to_string(checked - off.size()) + "/" +
             std::to_string(checked) + " cells within " + std::to_string(kDropTolerance).substr(0, 4) +
             ", " + std::to_string(elapsed).substr(0, 5) + " s";
  for (const auto& s : off) o.detail += "; " + s;
  return o;
}

Outcome noise_marginals() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  NoiseConfig cfg;  // defaults: 0.02 / 0.02 / 0.10, p_verse 1
  cfg.seed = 1234;
  const auto& map = ConfusionMap::standard();

  // One corpus: verse ids must be distinct or streams repeat.
  const auto pairs = forge::testing::synthetic_corpus(rng, kNoiseVerses, {"v1"}, 40, 120);
  const std::size_t verses = pairs.size();
  const NoiseReport total = corrupt_corpus(pairs, cfg, map).report;
  const double elapsed = seconds_since(t0);

  struct Pass {
    const char* name;
    std::uint64_t hits;
    std::uint64_t trials;
    double p;
  };
  const Pass passes[] = {
      {"substitute", total.chars_substituted, total.chars_substitutable, cfg.p_substitute},
      {"swap", total.chars_swapped, total.swap_positions, cfg.p_swap},
      {"delete", total.chars_deleted, total.chars_seen, cfg.p_delete},
  };
  Outcome o;
  o.pass = elapsed < kNoiseBudgetSeconds && total.verses_corrupted == verses &&
           total.chars_substitutable >= kNoiseMinSubstitutable;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu verses, %llu substitutable chars, %.2f s", verses,
                static_cast<unsigned long long>(total.chars_substitutable), elapsed);
  o.detail = buf;
  for (const auto& p : passes) {
    const double n = static_cast<double>(p.trials);
    const double rate = static_cast<double>(p.hits) / n;
    const double sigma = std::sqrt(p.p * (1 - p.p) / n);
    const double z = (rate - p.p) / sigma;
    if (!(std::fabs(z) <= kNoiseSigmas)) o.pass = false;
    std::snprintf(buf, sizeof buf, "; %s %.5f (z=%+.2f)", p.name, rate, z);
    o.detail += buf;
  }
  return o;
}

int cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run_subcommand(args, out, err, [](const std::string&) { return std::nullopt; });
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return files;
}

Outcome sweep_determinism() {
  forge::testing::TempDir dir;
  std::mt19937_64 rng(77);
  write_file(dir / "test.jsonl",
             corpus_to_jsonl(to_records(forge::testing::synthetic_corpus(rng, kSweepVerses))));
  auto run = [&](const std::string& out, const std::string& threads) {
    return cli({"sweep", "--input", (dir / "test.jsonl").string(), "--rates", "0,0.1,0.3,0.5,1.0",
                "--seed", "42", "--threads", threads, "--output-dir", (dir / out).string()});
  };
  const int a = run("a", "1"), b = run("b", "1"), c = run("c", "8");
  Outcome o;
  if (a != 0 || b != 0 || c != 0) {
    o.detail = "sweep exit codes " + std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(c);
    return o;
  }
  const auto ta = tree(dir / "a"), tb = tree(dir / "b"), tc = tree(dir / "c");
  o.pass = !ta.empty() && ta == tb && ta == tc && ta.size() == 20;
  o.detail = std::to_string(kSweepVerses) + " verses, " + std::to_string(ta.size()) +
             " files; repeat " + (ta == tb ? "identical" : "differs") + ", 8 threads " +
             (ta == tc ? "identical" : "differs");
  return o;
}

Outcome zero_noise_identity() {
  std::mt19937_64 rng(5);
  auto pairs = forge::testing::synthetic_corpus(rng, 2000, {"v1", "v2"});
  const auto original = corpus_to_jsonl(to_records(pairs));
  const auto& map = ConfusionMap::standard();

  NoiseConfig unselected;
  unselected.p_verse = 0.0;
  unselected.seed = 9;
  NoiseConfig zero_probs;
  zero_probs.p_delete = zero_probs.p_swap = zero_probs.p_substitute = 0.0;
  zero_probs.seed = 9;

  bool ok = true;
  std::string detail;
  for (const auto& [name, cfg] : {std::pair{"p_verse=0", unselected}, {"all p=0", zero_probs}}) {
    for (unsigned threads : {1u, 4u}) {
      auto variant = corrupt_corpus(pairs, cfg, map, threads);
      std::vector<AlignedPair> out;
      for (const auto& p : variant.pairs) out.push_back(p.pair);
      const bool same = corpus_to_jsonl(to_records(out)) == original;
      const bool untouched = variant.report.chars_deleted == 0 && variant.report.chars_swapped == 0 &&
                             variant.report.chars_substituted == 0;
      ok = ok && same && untouched;
      if (threads == 1) detail += std::string(detail.empty() ? "" : ", ") + name + (same ? " identical" : " differs");
    }
  }
  return {ok, detail};
}

Outcome meteor_oracle_equivalence() {
  std::mt19937_64 rng(99);
  const std::vector<std::string> vocab{"le", "la", "Le", "dieu", "Dieu", "fils", "de", "et"};
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  auto sentence = [&] {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += (s.empty() ? "" : " ") + vocab[word(rng)];
    return s;
  };
  int agree = 0;
  std::string first_bad;
  for (int n = 0; n < kMeteorCases; ++n) {
    const auto h = sentence(), r = sentence();
    const auto want = forge::testing::meteor_oracle(h, r);
    const auto got = meteor_stats(h, r);
    if (got.alignment.matches == want.matches && got.alignment.chunks == want.chunks &&
        got.score == want.score) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = "'" + h + "' vs '" + r + "'";
    }
  }
  const double identical = meteor("a b c d e f g h i j", "a b c d e f g h i j");
  Outcome o;
  o.pass = agree == kMeteorCases &&
           std::fabs(identical - kMeteorIdentical) <= kMeteorIdenticalTolerance;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/%d exact agreement, identical-10 = %.12f", agree,
                kMeteorCases, identical);
  o.detail = buf;
  if (!first_bad.empty()) o.detail += "; first mismatch " + first_bad;
  return o;
}

Outcome cleaning_properties() {
  std::mt19937_64 rng(31);
  const std::vector<std::string> sources{"ⲁⲛⲟⲕ", "[...]", "[…]", "...", "ⲁ [...]", "", "  ",
                                         "[ ... ]", "ⲡⲉ."};
  const std::vector<std::string> prefixes{"", "(1.2) ", "(12.31) ", "(4) ", "(1.2)(3) ", "(x) "};
  const std::vector<std::string> bodies{"Et il dit", "", " ", "(1.2)", "Au commencement"};
  std::uniform_int_distribution<std::size_t> ps(0, sources.size() - 1),
      pp(0, prefixes.size() - 1), pb(0, bodies.size() - 1);
  std::uniform_int_distribution<std::uint32_t> nverses(1, 60);
  const auto& books = BookNameTable::standard();

  std::size_t pairs_seen = 0;
  std::vector<std::string> broken;
  auto require = [&](bool cond, const char* what) {
    if (!cond && std::find(broken.begin(), broken.end(), what) == broken.end()) broken.push_back(what);
  };
  for (int round = 0; round < kCleanRounds; ++round) {
    std::vector<AlignedPair> pairs;
    const auto n = nverses(rng);
    for (std::uint32_t v = 1; v <= n; ++v) {
      for (const char* version : {"v1", "v2"}) {
        pairs.push_back({make_verse_id(books, "Luke", 1 + v % 3, v), sources[ps(rng)],
                         prefixes[pp(rng)] + bodies[pb(rng)], version});
      }
    }
    pairs_seen += pairs.size();
    auto result = clean(pairs);

    // partition: every input pair is either kept or logged, never both
    std::multiset<std::pair<VerseId, std::string>> in, out;
    for (const auto& p : pairs) in.emplace(p.id, p.version);
    for (const auto& k : result.kept) out.emplace(k.id, k.version);
    for (const auto& r : result.removed) out.emplace(r.id, r.version);
    require(in == out, "partition");

    for (const auto& p : pairs) {
      if (!is_ellipsis_only(p.source_text)) continue;
      bool logged = false;
      for (const auto& r : result.removed) {
        logged = logged || (r.id == p.id && r.version == p.version);
      }
      require(logged, "ellipsis sources removed");
    }
    for (const auto& k : result.kept) {
      require(!is_ellipsis_only(k.source_text), "ellipsis sources removed");
      require(strip_leading_annotations(k.reference_text) == k.reference_text, "annotations stripped");
      require(k.reference_text.rfind("(1.2)", 0) != 0 && k.reference_text.rfind("(12.31)", 0) != 0,
              "annotations stripped");
    }
    for (const auto& r : result.removed) require(reason_holds(r), "removal reasons re-verify");

    auto again = clean(result.kept);
    require(again.kept == result.kept && again.removed.empty(), "idempotent");
  }
  Outcome o;
  o.pass = broken.empty();
  o.detail = std::to_string(kCleanRounds) + " corpora, " + std::to_string(pairs_seen) + " pairs";
  for (const auto& b : broken) o.detail += "; violated: " + b;
  return o;
}

Outcome split_leakage() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> size(0, 400);
  int clean_splits = 0;
  for (int n = 0; n < kSplitCorpora; ++n) {
    auto pairs = forge::testing::synthetic_corpus(rng, size(rng), {"segond", "darby", "crampon"}, 1, 4);
    auto result = split(pairs, SplitConfig{});
    bool ok = verify_no_leakage(result.train, result.test) &&
              result.train.size() + result.test.size() == pairs.size();
    for (const auto& p : result.test) ok = ok && SplitConfig{}.test_books.contains(p.id.book);
    clean_splits += ok;
  }
  const std::set<std::string> expected{"1Cor", "Mark", "Gal", "Heb"};
  const bool defaults = SplitConfig{}.test_books == expected;
  Outcome o;
  o.pass = clean_splits == kSplitCorpora && defaults;
  o.detail = std::to_string(clean_splits) + "/" + std::to_string(kSplitCorpora) +
             " corpora leak-free; default test books " + (defaults ? "{1Cor, Mark, Gal, Heb}" : "differ");
  return o;
}

std::string random_unicode(std::mt19937_64& rng) {
  struct Range {
    char32_t lo, hi;
  };
  static const Range ranges[] = {
      {0x20, 0x7E},       {0x2C80, 0x2CFF},   {0x03E2, 0x03EF}, {0x0300, 0x036F},
      {0xFE20, 0xFE2F},   {0x0370, 0x03FF},   {0x00A0, 0x024F}, {0x0590, 0x06FF},
      {0x4E00, 0x9FFF},   {0x1F300, 0x1FAFF}, {0x10000, 0x1FFFF}, {0xE000, 0xF8FF},
      {0x20000, 0x2A6DF}, {0x1, 0x1F},        {0xFFF0, 0xFFFD},
  };
  std::uniform_int_distribution<std::size_t> pick(0, std::size(ranges) - 1);
  std::uniform_int_distribution<int> len(0, 40);
  std::u32string s;
  for (int i = len(rng); i > 0; --i) {
    const auto& r = ranges[pick(rng)];
    s += std::uniform_int_distribution<std::uint32_t>(r.lo, r.hi)(rng);
  }
  std::string out;
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

Outcome romanizer_totality() {
  std::mt19937_64 rng(10'000);
  RomanizationTable replace = RomanizationTable::standard();
  RomanizationTable dropping = RomanizationTable::standard();
  dropping.set_policy(UnmappedPolicy::drop());
  int ascii = 0, failures = 0;
  for (int n = 0; n < kRomanizerStrings; ++n) {
    const auto s = random_unicode(rng);
    try {
      bool ok = true;
      for (const auto* table : {&replace, &dropping}) {
        for (unsigned char c : romanize(s, *table)) ok = ok && c < 0x80;
      }
      ascii += ok;
    } catch (...) {
      ++failures;
    }
  }
  Outcome o;
  o.pass = ascii == kRomanizerStrings && failures == 0;
  o.detail = std::to_string(ascii) + "/" + std::to_string(kRomanizerStrings) +
             " ASCII under replace and drop policies, " + std::to_string(failures) + " failures";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"drop-table reproduction", drop_table_reproduction},
      {"noise marginal rates", noise_marginals},
      {"noise determinism", sweep_determinism},
      {"zero-noise identity", zero_noise_identity},
      {"meteor oracle equivalence", meteor_oracle_equivalence},
      {"cleaning rules", cleaning_properties},
      {"split leakage", split_leakage},
      {"romanizer totality", romanizer_totality},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
