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


#include "forge_cli/config.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/drop.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/romanizer.hpp"
#include "corpusforge/utf8.hpp"

namespace forge::cli {
namespace fs = std::filesystem;

namespace {

std::string join_lines(const std::vector<std::string>& v) {
  std::string out = "invalid configuration:";
  for (const auto& s : v) out += "\n  " + s;
  return out;
}

std::optional<bool> parse_bool(std::string_view s) {
  static const std::set<std::string_view> yes{"true", "yes", "on", "1"};
  static const std::set<std::string_view> no{"false", "no", "off", "0"};
  if (yes.contains(s)) return true;
  if (no.contains(s)) return false;
  return std::nullopt;
}

template <typename T>
std::optional<T> parse_uint(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_probability(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !(v >= 0.0 && v <= 1.0)) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    auto item = utf8::trim(s.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::path p = dir;
  while (!p.empty() && !fs::exists(p, ec)) {
    if (!p.has_parent_path() || p.parent_path() == p) return false;
    p = p.parent_path();
  }
  if (p.empty()) p = ".";
  if (!fs::is_directory(p, ec)) return false;
  return ::access(p.c_str(), W_OK | X_OK) == 0;
}

bool known_key(const std::string& key) {
  if (key.starts_with("paula.") && key.size() > 6 && key != "paula.lenient") return true;
  if (key.starts_with("reference.") && key.size() > 10) return true;
  const auto& keys = scalar_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)), violations_(std::move(violations)) {}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

std::string env_name(std::string_view key) {
  std::string out = "FORGE_";
  for (char c : key) {
    if (c == '.') out += '_';
    else if (c >= 'a' && c <= 'z') out += static_cast<char>(c - 'a' + 'A');
    else out += c;
  }
  return out;
}

const std::vector<std::string>& scalar_keys() {
  static const std::vector<std::string> keys{
      "books",          "romanization_table", "romanization.unmapped", "confusion_map",
      "paula.lenient",  "output_dir",         "test_books",            "romanize",
      "emit_stats",     "export_tsv",         "seed",                  "threads",
      "noise.rates",    "noise.targets",      "noise.p_delete",        "noise.p_swap",
      "noise.p_substitute", "noise.lacuna",
  };
  return keys;
}

Settings parse_config_text(std::string_view text, std::vector<std::string>& violations) {
  Settings settings;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    std::string line = utf8::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      violations.push_back("line " + std::to_string(line_no) + ": expected key=value");
      continue;
    }
    std::string key = utf8::trim(std::string_view(line).substr(0, eq));
    std::string value = utf8::trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) {
      violations.push_back("line " + std::to_string(line_no) + ": empty key");
      continue;
    }
    if (auto it = settings.find(key); it != settings.end()) {
      violations.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key +
                           "' (first on line " + std::to_string(it->second.line) + ")");
      continue;
    }
    settings.emplace(key, Setting{value, SettingSource::kFile, line_no});
  }
  return settings;
}

PipelineConfig validate_config(const fs::path& path, const Settings& flag_overrides,
                               const EnvLookup& env) {
  std::vector<std::string> v;
  Settings s;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw ConfigError({"config file not found: " + path.string()});
  }
  s = parse_config_text(read_file(path), v);
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");

  if (env) {
    for (const auto& key : scalar_keys()) {
      if (auto value = env(env_name(key))) s[key] = Setting{*value, SettingSource::kEnv, 0};
    }
  }
  for (const auto& [key, setting] : flag_overrides) {
    Setting copy = setting;
    copy.source = SettingSource::kFlag;
    s[key] = copy;
  }

  auto where = [](const std::string& key, const Setting& st) {
    switch (st.source) {
      case SettingSource::kFile: return key + " (line " + std::to_string(st.line) + ")";
      case SettingSource::kEnv: return key + " (from " + env_name(key) + ")";
      case SettingSource::kFlag: return key + " (from command line)";
      case SettingSource::kDefault: break;
    }
    return key;
  };
  auto resolve = [&](const Setting& st) {
    fs::path p(st.value);
    if (p.is_relative() && st.source == SettingSource::kFile) p = base / p;
    return p.lexically_normal();
  };
  auto need_file = [&](const std::string& key, const Setting& st) -> std::optional<fs::path> {
    if (st.value.empty()) {
      v.push_back(where(key, st) + ": empty path");
      return std::nullopt;
    }
    fs::path p = resolve(st);
    if (!fs::is_regular_file(p, ec)) {
      v.push_back(where(key, st) + ": file not found: " + p.string());
      return std::nullopt;
    }
    return p;
  };

  for (const auto& [key, st] : s) {
    if (!known_key(key)) v.push_back("unknown key '" + where(key, st) + "'");
  }

  PipelineConfig cfg;
  auto get = [&](const std::string& key) -> const Setting* {
    auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
  };
  auto get_bool = [&](const std::string& key, bool& out) {
    if (const auto* st = get(key)) {
      if (auto b = parse_bool(st->value)) out = *b;
      else v.push_back(where(key, *st) + ": expected true or false, got '" + st->value + "'");
    }
  };

  // Tables first; later checks use them.
  BookNameTable books_table = BookNameTable::standard();
  if (const auto* st = get("books")) {
    if (auto p = need_file("books", *st)) {
      cfg.books = *p;
      try {
        books_table = BookNameTable::load(*p);
      } catch (const Error& e) {
        v.push_back(where("books", *st) + ": " + e.what());
      }
    }
  }
  if (const auto* st = get("romanization_table")) {
    if (auto p = need_file("romanization_table", *st)) {
      cfg.romanization_table = *p;
      try {
        RomanizationTable::load(*p);
      } catch (const Error& e) {
        v.push_back(where("romanization_table", *st) + ": " + e.what());
      }
    }
  }
  if (const auto* st = get("romanization.unmapped")) {
    try {
      UnmappedPolicy::parse(st->value);
      cfg.unmapped = st->value;
    } catch (const Error& e) {
      v.push_back(where("romanization.unmapped", *st) + ": " + e.what());
    }
  }
  std::optional<ConfusionMap> confusion;
  if (const auto* st = get("confusion_map")) {
    if (auto p = need_file("confusion_map", *st)) {
      cfg.confusion_map = *p;
      try {
        confusion = ConfusionMap::load(*p);
      } catch (const Error& e) {
        v.push_back(where("confusion_map", *st) + ": " + e.what());
      }
    }
  } else {
    confusion = ConfusionMap::standard();
  }

  for (const auto& [key, st] : s) {
    if (key.starts_with("paula.") && key != "paula.lenient" && key.size() > 6) {
      auto parts = split_list(st.value);
      if (parts.size() != 3) {
        v.push_back(where(key, st) + ": expected tokens,marks,feats paths");
        continue;
      }
      DocSetPaths d{key.substr(6), {}, {}, {}};
      bool ok = true;
      fs::path* dst[] = {&d.tokens, &d.marks, &d.feats};
      for (int i = 0; i < 3; ++i) {
        Setting part{parts[i], st.source, st.line};
        if (auto p = need_file(key, part)) *dst[i] = *p;
        else ok = false;
      }
      if (ok) cfg.paula.push_back(std::move(d));
    } else if (key.starts_with("reference.") && key.size() > 10) {
      if (auto p = need_file(key, st)) cfg.references.push_back({key.substr(10), *p});
    }
  }
  const bool any_paula = std::any_of(s.begin(), s.end(), [](const auto& kv) {
    return kv.first.starts_with("paula.") && kv.first != "paula.lenient" && kv.first.size() > 6;
  });
  const bool any_ref = std::any_of(s.begin(), s.end(), [](const auto& kv) {
    return kv.first.starts_with("reference.") && kv.first.size() > 10;
  });
  if (!any_paula) v.push_back("at least one paula.<name> = tokens,marks,feats entry is required");
  if (!any_ref) v.push_back("at least one reference.<label> = path entry is required");
  get_bool("paula.lenient", cfg.lenient);

  if (const auto* st = get("output_dir"); st == nullptr || st->value.empty()) {
    v.push_back("output_dir is required");
  } else {
    cfg.output_dir = resolve(*st);
    if (!writable_dir(cfg.output_dir)) {
      v.push_back(where("output_dir", *st) + ": not a writable directory: " +
                  cfg.output_dir.string());
    }
  }

  if (const auto* st = get("test_books")) {
    try {
      cfg.split = SplitConfig::from_list(st->value, books_table);
      cfg.split.validate(books_table);
    } catch (const Error& e) {
      v.push_back(where("test_books", *st) + ": " + e.what());
    }
  }
  get_bool("romanize", cfg.romanize);
  get_bool("emit_stats", cfg.emit_stats);
  get_bool("export_tsv", cfg.export_tsv);

  if (const auto* st = get("seed")) {
    if (auto n = parse_uint<std::uint64_t>(st->value)) cfg.seed = *n;
    else v.push_back(where("seed", *st) + ": expected an unsigned 64-bit integer");
  }
  if (const auto* st = get("threads")) {
    if (auto n = parse_uint<unsigned>(st->value)) cfg.threads = *n;
    else v.push_back(where("threads", *st) + ": expected a non-negative integer");
  }

  if (const auto* st = get("noise.rates")) {
    std::set<RatePpm> seen;
    for (const auto& item : split_list(st->value)) {
      try {
        RatePpm ppm = parse_rate(item);
        if (!seen.insert(ppm).second) {
          v.push_back(where("noise.rates", *st) + ": duplicate rate " + item);
        } else {
          cfg.rates.push_back(static_cast<double>(ppm) / 1e6);
        }
      } catch (const Error& e) {
        v.push_back(where("noise.rates", *st) + ": " + e.what());
      }
    }
  }
  if (const auto* st = get("noise.targets")) {
    cfg.noise_train = cfg.noise_test = false;
    auto items = split_list(st->value);
    if (items.empty()) v.push_back(where("noise.targets", *st) + ": empty list");
    for (const auto& t : items) {
      if (t == "train") cfg.noise_train = true;
      else if (t == "test") cfg.noise_test = true;
      else v.push_back(where("noise.targets", *st) + ": expected train and/or test, got '" + t + "'");
    }
  }
  auto get_prob = [&](const std::string& key, double& out) {
    if (const auto* st = get(key)) {
      if (auto p = parse_probability(st->value)) out = *p;
      else v.push_back(where(key, *st) + ": expected a probability in [0, 1]");
    }
  };
  get_prob("noise.p_delete", cfg.noise.p_delete);
  get_prob("noise.p_swap", cfg.noise.p_swap);
  get_prob("noise.p_substitute", cfg.noise.p_substitute);
  if (const auto* st = get("noise.lacuna")) {
    auto cps = utf8::decode(st->value);
    if (cps.size() != 1 || utf8::is_space(cps[0])) {
      v.push_back(where("noise.lacuna", *st) + ": expected a single non-space character");
    } else {
      cfg.noise.lacuna_symbol = cps[0];
    }
  }
  if (confusion && confusion->mentions(cfg.noise.lacuna_symbol)) {
    v.push_back("noise.lacuna: symbol appears in the confusion map");
  }
  cfg.noise.seed = cfg.seed;

  if (!v.empty()) throw ConfigError(std::move(v));

  for (const auto& [key, st] : s) {
    if (key == "threads") continue;
    cfg.canonical += key + "=" + st.value + "\n";
  }
  return cfg;
}

}  // namespace forge::cli
