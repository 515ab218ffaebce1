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


#include "corpusforge/drop.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/error.hpp"

namespace forge {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidRecord, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string format_one_decimal(double v) {
  if (v == 0.0) v = 0.0;  // no "-0.0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

RatePpm rate_to_ppm(double rate) { return static_cast<RatePpm>(std::llround(rate * 1e6)); }

RatePpm parse_rate(std::string_view text) {
  std::string_view s = trim(text);
  bool percent = false;
  if (!s.empty() && s.back() == '%') {
    percent = true;
    s.remove_suffix(1);
  }
  double v = parse_double(trim(s), "noise rate");
  if (percent || v > 1.0) v /= 100.0;
  if (v < 0.0 || v > 1.0) {
    throw Error(ErrorCode::kInvalidRecord, "noise rate out of range '" + std::string(text) + "'");
  }
  return rate_to_ppm(v);
}

std::string format_rate_percent(RatePpm ppm) {
  char buf[32];
  if (ppm % 10000 == 0) {
    std::snprintf(buf, sizeof buf, "%lld%%", static_cast<long long>(ppm / 10000));
  } else {
    std::snprintf(buf, sizeof buf, "%g%%", static_cast<double>(ppm) / 1e4);
  }
  return buf;
}

void ScoreTable::add(std::string model, RatePpm test_noise, RatePpm train_noise,
                     std::string metric, double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorCode::kInvalidRecord, "score out of [0, 1]: " + std::to_string(score));
  }
  if (metric.empty()) throw Error(ErrorCode::kInvalidRecord, "empty metric name");
  if (std::find(models_.begin(), models_.end(), model) == models_.end()) models_.push_back(model);
  if (std::find(metrics_.begin(), metrics_.end(), metric) == metrics_.end()) metrics_.push_back(metric);
  ScoreKey key{std::move(model), test_noise, train_noise, std::move(metric)};
  if (!scores_.emplace(key, score).second) {
    throw Error(ErrorCode::kInvalidRecord,
                "duplicate score for " + (key.model.empty() ? "" : key.model + " ") + "test " +
                    format_rate_percent(key.test_noise) + " train " +
                    format_rate_percent(key.train_noise) + " " + key.metric);
  }
}

ScoreTable ScoreTable::parse_csv(std::string_view csv) {
  ScoreTable table;
  std::vector<std::string> header;
  int col_model = -1, col_test = -1, col_train = -1, col_metric = -1, col_score = -1;
  std::vector<int> metric_cols;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    auto nl = csv.find('\n', pos);
    std::string_view line = csv.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? csv.size() : nl + 1;
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    auto fields = split_csv(line);

    if (header.empty()) {
      header = fields;
      for (std::size_t i = 0; i < header.size(); ++i) {
        const auto name = lower(header[i]);
        const int c = static_cast<int>(i);
        if (name == "model") col_model = c;
        else if (name == "test_noise") col_test = c;
        else if (name == "train_noise") col_train = c;
        else if (name == "metric") col_metric = c;
        else if (name == "score") col_score = c;
        else metric_cols.push_back(c);
      }
      if (col_test < 0 || col_train < 0) {
        throw Error(ErrorCode::kInvalidRecord, "header needs test_noise and train_noise columns");
      }
      const bool long_form = col_metric >= 0 || col_score >= 0;
      if (long_form && (col_metric < 0 || col_score < 0 || !metric_cols.empty())) {
        throw Error(ErrorCode::kInvalidRecord,
                    "long form header must be [model,]test_noise,train_noise,metric,score");
      }
      if (!long_form && metric_cols.empty()) {
        throw Error(ErrorCode::kInvalidRecord, "no metric columns in header");
      }
      continue;
    }

    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kInvalidRecord, "line " + std::to_string(line_no) + ": expected " +
                                                 std::to_string(header.size()) + " fields");
    }
    try {
      std::string model = col_model >= 0 ? fields[col_model] : std::string();
      RatePpm test = parse_rate(fields[col_test]);
      RatePpm train = parse_rate(fields[col_train]);
      if (col_metric >= 0) {
        table.add(model, test, train, fields[col_metric], parse_double(fields[col_score], "score"));
      } else {
        for (int c : metric_cols) {
          table.add(model, test, train, header[c], parse_double(fields[c], "score"));
        }
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidRecord, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

ScoreTable ScoreTable::load_csv(const std::string& path) { return parse_csv(read_file(path)); }

double relative_drop_exact(double clean_score, double noisy_score) {
  if (clean_score == 0.0) throw Error(ErrorCode::kDivisionByZero, "clean score is zero");
  if (!(clean_score > 0.0)) throw Error(ErrorCode::kInvalidArgument, "clean score must be positive");
  return 100.0 * (clean_score - noisy_score) / clean_score;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::floor(value * scale + 0.5 + 1e-9) / scale;
  return r == 0.0 ? 0.0 : r;
}

double relative_drop(double clean_score, double noisy_score) {
  return round_half_up(relative_drop_exact(clean_score, noisy_score), 1);
}

const DropCell* DropMatrix::find(std::string_view model, RatePpm train_noise,
                                 std::string_view metric) const {
  for (const auto& c : cells) {
    if (c.model == model && c.train_noise == train_noise && c.metric == metric) return &c;
  }
  return nullptr;
}

std::string DropMatrix::to_csv() const {
  const bool with_model = !(models.size() == 1 && models.front().empty());
  std::string out = with_model ? "model,train_noise" : "train_noise";
  for (const auto& m : metrics) out += "," + m;
  out += "\n";
  for (const auto& model : models) {
    for (RatePpm train : train_noises) {
      bool any = false;
      std::string row = with_model ? model + "," + format_rate_percent(train)
                                   : format_rate_percent(train);
      for (const auto& metric : metrics) {
        row += ",";
        if (const auto* c = find(model, train, metric)) {
          row += format_one_decimal(c->drop);
          any = true;
        }
      }
      if (any) out += row + "\n";
    }
  }
  return out;
}

DropMatrix drop_table(const ScoreTable& table) {
  constexpr RatePpm kClean = 0;
  constexpr RatePpm kFull = 1'000'000;

  DropMatrix matrix;
  matrix.models = table.models();
  matrix.metrics = table.metrics();

  // Every (model, train noise, metric) referenced anywhere needs both ends.
  std::set<std::tuple<std::string, RatePpm, std::string>> referenced;
  std::set<RatePpm> trains;
  for (const auto& [key, score] : table.scores()) {
    referenced.emplace(key.model, key.train_noise, key.metric);
    trains.insert(key.train_noise);
  }
  matrix.train_noises.assign(trains.begin(), trains.end());

  std::vector<std::string> missing;
  for (const auto& model : matrix.models) {
    for (RatePpm train : matrix.train_noises) {
      for (const auto& metric : matrix.metrics) {
        if (!referenced.contains({model, train, metric})) continue;
        auto clean = table.scores().find({model, kClean, train, metric});
        auto noisy = table.scores().find({model, kFull, train, metric});
        auto label = (model.empty() ? "" : model + " ") + "train " + format_rate_percent(train) +
                     " " + metric;
        if (clean == table.scores().end()) missing.push_back(label + " @ test 0%");
        if (noisy == table.scores().end()) missing.push_back(label + " @ test 100%");
        if (clean == table.scores().end() || noisy == table.scores().end()) continue;
        matrix.cells.push_back({model, train, metric, clean->second, noisy->second,
                                relative_drop(clean->second, noisy->second)});
      }
    }
  }
  if (!missing.empty()) {
    std::string what = "missing rows:";
    for (const auto& m : missing) what += " [" + m + "]";
    throw Error(ErrorCode::kIncompleteTable, what);
  }
  return matrix;
}

}  // namespace forge
