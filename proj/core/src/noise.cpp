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


#include "corpusforge/noise.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <thread>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/resources.hpp"
#include "corpusforge/rng.hpp"
#include "corpusforge/utf8.hpp"

namespace forge {
namespace {

[[noreturn]] void invalid_map(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfusionMap, what);
}

char32_t parse_cp(std::string_view field) {
  if (field.starts_with("U+") || field.starts_with("u+")) field.remove_prefix(2);
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, 16);
  if (field.empty() || field.size() > 6 || ec != std::errc{} ||
      ptr != field.data() + field.size() || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    invalid_map("malformed code point '" + std::string(field) + "'");
  }
  return static_cast<char32_t>(value);
}

// Positive decimal or "p/q".
double parse_weight(std::string_view field) {
  auto parse_num = [&](std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      invalid_map("malformed weight '" + std::string(field) + "'");
    }
    return v;
  };
  double w;
  if (auto slash = field.find('/'); slash != std::string_view::npos) {
    double den = parse_num(field.substr(slash + 1));
    if (den <= 0) invalid_map("malformed weight '" + std::string(field) + "'");
    w = parse_num(field.substr(0, slash)) / den;
  } else {
    w = parse_num(field);
  }
  if (!(w > 0)) invalid_map("weight must be positive, got '" + std::string(field) + "'");
  return w;
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

std::size_t pick(const std::vector<ConfusionAlternative>& alts, double v) {
  double cum = 0.0;
  for (std::size_t k = 0; k < alts.size(); ++k) {
    cum += alts[k].weight;
    if (v < cum) return k;
  }
  return alts.size() - 1;
}

}  // namespace

void ConfusionMap::add(char32_t key, std::vector<ConfusionAlternative> alternatives) {
  if (alternatives.empty()) invalid_map("key without alternatives");
  double total = 0.0;
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    const auto& a = alternatives[i];
    if (a.cp == key) invalid_map("alternative equals its key");
    if (!(a.weight > 0) || !std::isfinite(a.weight)) invalid_map("weight must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (alternatives[j].cp == a.cp) invalid_map("duplicate alternative");
    }
    total += a.weight;
  }
  for (auto& a : alternatives) a.weight /= total;
  if (!entries_.emplace(key, std::move(alternatives)).second) invalid_map("duplicate key");
}

ConfusionMap ConfusionMap::parse(std::string_view tsv) {
  ConfusionMap map;
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
      auto tab = line.find('\t');
      if (tab == std::string_view::npos) invalid_map("expected two tab separated columns");
      char32_t key = parse_cp(line.substr(0, tab));
      std::vector<ConfusionAlternative> alts;
      std::string_view list = line.substr(tab + 1);
      std::size_t start = 0;
      while (start <= list.size()) {
        auto comma = list.find(',', start);
        auto item = list.substr(start, comma == std::string_view::npos ? comma : comma - start);
        auto colon = item.find(':');
        if (colon == std::string_view::npos) invalid_map("expected hex:weight, got '" + std::string(item) + "'");
        alts.push_back({parse_cp(item.substr(0, colon)), parse_weight(item.substr(colon + 1))});
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      map.add(key, std::move(alts));
    } catch (const Error& e) {
      invalid_map("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return map;
}

ConfusionMap ConfusionMap::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

const ConfusionMap& ConfusionMap::standard() {
  static const ConfusionMap map = parse(resources::confusion_tsv());
  return map;
}

const std::vector<ConfusionAlternative>* ConfusionMap::find(char32_t key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

bool ConfusionMap::mentions(char32_t cp) const {
  for (const auto& [key, alts] : entries_) {
    if (key == cp) return true;
    for (const auto& a : alts) {
      if (a.cp == cp) return true;
    }
  }
  return false;
}

void NoiseConfig::validate(const ConfusionMap& map) const {
  auto check = [](double p, const char* name) {
    if (!is_probability(p)) {
      throw Error(ErrorCode::kInvalidNoiseConfig,
                  std::string(name) + " must be in [0, 1], got " + std::to_string(p));
    }
  };
  check(p_delete, "p_delete");
  check(p_swap, "p_swap");
  check(p_substitute, "p_substitute");
  check(p_verse, "p_verse");
  if (lacuna_symbol == 0 || lacuna_symbol > 0x10FFFF ||
      (lacuna_symbol >= 0xD800 && lacuna_symbol <= 0xDFFF)) {
    throw Error(ErrorCode::kInvalidNoiseConfig, "lacuna symbol is not a valid code point");
  }
  if (map.mentions(lacuna_symbol)) {
    throw Error(ErrorCode::kInvalidNoiseConfig, "lacuna symbol appears in the confusion map");
  }
}

NoiseReport& NoiseReport::operator+=(const NoiseReport& o) {
  verses_total += o.verses_total;
  verses_corrupted += o.verses_corrupted;
  chars_seen += o.chars_seen;
  chars_deleted += o.chars_deleted;
  chars_swapped += o.chars_swapped;
  chars_substituted += o.chars_substituted;
  chars_substitutable += o.chars_substitutable;
  swap_positions += o.swap_positions;
  return *this;
}

CorruptedVerse corrupt_verse(std::string_view text, const NoiseConfig& cfg,
                             const ConfusionMap& map, const VerseId& verse_key) {
  std::u32string cps = utf8::decode(text);
  const std::size_t n = cps.size();
  CorruptedVerse out;
  out.delta.chars_seen = n;
  VerseStream rng(cfg.seed, StreamDomain::kCorrupt, verse_key);

  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const auto* alts = map.find(cps[i]);
    if (alts == nullptr) continue;
    ++out.delta.chars_substitutable;
    if (u < cfg.p_substitute) {
      cps[i] = (*alts)[pick(*alts, u / cfg.p_substitute)].cp;
      ++out.delta.chars_substituted;
    }
  }

  bool swapped_into = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (swapped_into) {
      swapped_into = false;
      continue;
    }
    if (i + 1 >= n) continue;
    ++out.delta.swap_positions;
    if (u < cfg.p_swap) {
      std::swap(cps[i], cps[i + 1]);
      ++out.delta.chars_swapped;
      swapped_into = true;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < cfg.p_delete) {
      cps[i] = cfg.lacuna_symbol;
      ++out.delta.chars_deleted;
    }
  }

  out.text = utf8::encode(cps);
  return out;
}

CorpusVariant corrupt_corpus(const std::vector<AlignedPair>& pairs, const NoiseConfig& cfg,
                             const ConfusionMap& map, unsigned threads) {
  cfg.validate(map);
  CorpusVariant variant;
  variant.rate = cfg.p_verse;
  variant.seed = cfg.seed;
  variant.pairs.resize(pairs.size());

  const std::size_t workers =
      std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, std::max<std::size_t>(pairs.size(), 1));
  std::vector<NoiseReport> partial(workers);

  auto run = [&](std::size_t w) {
    const std::size_t begin = pairs.size() * w / workers;
    const std::size_t end = pairs.size() * (w + 1) / workers;
    NoiseReport& report = partial[w];
    for (std::size_t i = begin; i < end; ++i) {
      NoisyPair& out = variant.pairs[i];
      out.pair = pairs[i];
      ++report.verses_total;
      VerseStream select(cfg.seed, StreamDomain::kSelect, pairs[i].id);
      if (!(select.uniform() < cfg.p_verse)) continue;
      auto corrupted = corrupt_verse(pairs[i].source_text, cfg, map, pairs[i].id);
      out.pair.source_text = std::move(corrupted.text);
      out.noise_applied = true;
      ++report.verses_corrupted;
      report += corrupted.delta;
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (const auto& r : partial) variant.report += r;
  return variant;
}

std::vector<CorpusVariant> sweep(const std::vector<AlignedPair>& pairs, const NoiseConfig& base,
                                 const ConfusionMap& map, const std::vector<double>& rates,
                                 unsigned threads) {
  if (rates.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one rate");
  std::vector<CorpusVariant> variants;
  variants.reserve(rates.size());
  for (double rate : rates) {
    NoiseConfig cfg = base;
    cfg.p_verse = rate;
    cfg.seed = rate_seed(base.seed, rate);
    variants.push_back(corrupt_corpus(pairs, cfg, map, threads));
  }
  return variants;
}

}  // namespace forge
