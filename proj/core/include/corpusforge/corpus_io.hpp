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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/align.hpp"
#include "corpusforge/meteor.hpp"
#include "corpusforge/noise.hpp"
#include "corpusforge/paula.hpp"

namespace forge {

// One line of a corpus JSONL file. Field order on disk:
//   id{book,chapter,verse}, version, source_raw, source_romanized?,
//   reference, noise_applied?
struct CorpusRecord {
  AlignedPair pair;
  std::optional<std::string> source_romanized;
  std::optional<bool> noise_applied;

  bool operator==(const CorpusRecord&) const = default;
};

std::string read_file(const std::filesystem::path& path);
// Creates parent directories. Throws kIoError.
void write_file(const std::filesystem::path& path, std::string_view bytes);

// Lines are terminated with '\n'; blank lines are skipped when reading.
// Malformed lines throw kInvalidRecord with the line number.
std::string verse_records_to_jsonl(const std::vector<VerseRecord>& records);
std::vector<VerseRecord> verse_records_from_jsonl(std::string_view text,
                                                  const BookNameTable& books);

std::string corpus_to_jsonl(const std::vector<CorpusRecord>& records);
std::vector<CorpusRecord> corpus_from_jsonl(std::string_view text,
                                            const BookNameTable& books);

std::vector<CorpusRecord> to_records(const std::vector<AlignedPair>& pairs);
std::vector<CorpusRecord> to_records(const std::vector<NoisyPair>& pairs);
std::vector<AlignedPair> to_pairs(const std::vector<CorpusRecord>& records);

// id, version, source (romanized when present), reference; tab separated,
// with tabs and newlines inside fields replaced by spaces.
std::string corpus_to_tsv(const std::vector<CorpusRecord>& records);

std::string removals_to_jsonl(const std::vector<RemovalRecord>& records);
std::vector<RemovalRecord> removals_from_jsonl(std::string_view text,
                                               const BookNameTable& books);

std::string noise_report_to_json(const NoiseReport& report);
std::string stat_report_to_json(const StatReport& report);

// {"id":{...},"version":"...","hypothesis":"..."} per line.
std::vector<Hypothesis> hypotheses_from_jsonl(std::string_view text,
                                              const BookNameTable& books);
// Per-verse lines followed by nothing else; the mean goes to the summary.
std::string metric_report_to_jsonl(const MetricReport& report);
std::string metric_summary_to_json(const MetricReport& report);

}  // namespace forge
