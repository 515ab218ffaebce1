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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace forge {

// Noise rates are kept in parts per million so table lookups are exact.
using RatePpm = std::int64_t;

RatePpm rate_to_ppm(double rate);
// "10%", "0.1", "10" (values > 1 without a '%' are read as percentages).
RatePpm parse_rate(std::string_view text);
// 100000 -> "10%"
std::string format_rate_percent(RatePpm ppm);

struct ScoreKey {
  std::string model;
  RatePpm test_noise;
  RatePpm train_noise;
  std::string metric;

  auto operator<=>(const ScoreKey&) const = default;
};

// Scores indexed by (model, test noise, train noise, metric). The model is
// empty when the source has no model column.
class ScoreTable {
 public:
  void add(std::string model, RatePpm test_noise, RatePpm train_noise,
           std::string metric, double score);

  // Long form: [model,]test_noise,train_noise,metric,score
  // Wide form: [model,]test_noise,train_noise,<metric>,<metric>...
  static ScoreTable parse_csv(std::string_view csv);
  static ScoreTable load_csv(const std::string& path);

  const std::map<ScoreKey, double>& scores() const { return scores_; }
  // In first-seen order.
  const std::vector<std::string>& models() const { return models_; }
  const std::vector<std::string>& metrics() const { return metrics_; }
  std::size_t size() const { return scores_.size(); }

 private:
  std::map<ScoreKey, double> scores_;
  std::vector<std::string> models_;
  std::vector<std::string> metrics_;
};

// 100 * (clean - noisy) / clean, unrounded. Throws kDivisionByZero.
double relative_drop_exact(double clean_score, double noisy_score);

// Same, rounded half-up to one decimal.
double relative_drop(double clean_score, double noisy_score);

// Rounds half-up (towards +inf) at the given number of decimals, tolerating
// binary representation error of 1e-9 in the scaled value.
double round_half_up(double value, int decimals);

struct DropCell {
  std::string model;
  RatePpm train_noise;
  std::string metric;
  double clean;
  double noisy;
  double drop;  // rounded to one decimal
};

// Drop from 0% to 100% test noise for every (model, train noise, metric).
// Throws kIncompleteTable if either endpoint row is missing.
class DropMatrix {
 public:
  std::vector<std::string> models;
  std::vector<RatePpm> train_noises;
  std::vector<std::string> metrics;
  std::vector<DropCell> cells;

  const DropCell* find(std::string_view model, RatePpm train_noise,
                       std::string_view metric) const;

  // model,train_noise,<metric>... with one-decimal percentages.
  std::string to_csv() const;
};

DropMatrix drop_table(const ScoreTable& table);

}  // namespace forge
