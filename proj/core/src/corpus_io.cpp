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


#include "corpusforge/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "corpusforge/error.hpp"

namespace forge {
namespace {

using json = nlohmann::ordered_json;

std::string dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

json id_to_json(const VerseId& id) {
  json j;
  j["book"] = id.book;
  j["chapter"] = id.chapter;
  j["verse"] = id.verse;
  return j;
}

VerseId id_from_json(const json& j, const BookNameTable& books) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidRecord, "id must be an object");
  auto chapter = j.at("chapter").get<std::int64_t>();
  auto verse = j.at("verse").get<std::int64_t>();
  if (chapter < 1 || verse < 1 || chapter > UINT32_MAX || verse > UINT32_MAX) {
    throw Error(ErrorCode::kInvalidRecord, "chapter and verse must be positive");
  }
  return make_verse_id(books, j.at("book").get<std::string>(), static_cast<std::uint32_t>(chapter),
                       static_cast<std::uint32_t>(verse));
}

// Calls fn(json) for every non-blank line, wrapping errors with the line number.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidRecord, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

std::string verse_records_to_jsonl(const std::vector<VerseRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["id"] = id_to_json(r.id);
    j["text"] = r.text;
    j["source_doc"] = r.source_doc;
    j["token_count"] = r.token_count;
    out += dump(j);
    out += '\n';
  }
  return out;
}

std::vector<VerseRecord> verse_records_from_jsonl(std::string_view text, const BookNameTable& books) {
  std::vector<VerseRecord> out;
  for_each_line(text, [&](const json& j) {
    VerseRecord r;
    r.id = id_from_json(j.at("id"), books);
    r.text = j.at("text").get<std::string>();
    r.source_doc = j.value("source_doc", std::string());
    r.token_count = j.value("token_count", std::uint32_t{0});
    out.push_back(std::move(r));
  });
  return out;
}

std::string corpus_to_jsonl(const std::vector<CorpusRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["id"] = id_to_json(r.pair.id);
    j["version"] = r.pair.version;
    j["source_raw"] = r.pair.source_text;
    if (r.source_romanized) j["source_romanized"] = *r.source_romanized;
    j["reference"] = r.pair.reference_text;
    if (r.noise_applied) j["noise_applied"] = *r.noise_applied;
    out += dump(j);
    out += '\n';
  }
  return out;
}

std::vector<CorpusRecord> corpus_from_jsonl(std::string_view text, const BookNameTable& books) {
  std::vector<CorpusRecord> out;
  for_each_line(text, [&](const json& j) {
    CorpusRecord r;
    r.pair.id = id_from_json(j.at("id"), books);
    r.pair.version = j.at("version").get<std::string>();
    r.pair.source_text = j.at("source_raw").get<std::string>();
    r.pair.reference_text = j.at("reference").get<std::string>();
    if (auto it = j.find("source_romanized"); it != j.end() && !it->is_null()) {
      r.source_romanized = it->get<std::string>();
    }
    if (auto it = j.find("noise_applied"); it != j.end() && !it->is_null()) {
      r.noise_applied = it->get<bool>();
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<CorpusRecord> to_records(const std::vector<AlignedPair>& pairs) {
  std::vector<CorpusRecord> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({p, std::nullopt, std::nullopt});
  return out;
}

std::vector<CorpusRecord> to_records(const std::vector<NoisyPair>& pairs) {
  std::vector<CorpusRecord> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({p.pair, std::nullopt, p.noise_applied});
  return out;
}

std::vector<AlignedPair> to_pairs(const std::vector<CorpusRecord>& records) {
  std::vector<AlignedPair> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.pair);
  return out;
}

std::string corpus_to_tsv(const std::vector<CorpusRecord>& records) {
  auto field = [](std::string s) {
    for (auto& c : s) {
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
  };
  std::string out;
  for (const auto& r : records) {
    out += r.pair.id.to_string() + '\t' + field(r.pair.version) + '\t' +
           field(r.source_romanized.value_or(r.pair.source_text)) + '\t' +
           field(r.pair.reference_text) + '\n';
  }
  return out;
}

std::string removals_to_jsonl(const std::vector<RemovalRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["id"] = id_to_json(r.id);
    j["version"] = r.version;
    j["reason"] = std::string(to_string(r.reason));
    j["original_source"] = r.original_source;
    j["original_reference"] = r.original_reference;
    out += dump(j);
    out += '\n';
  }
  return out;
}

std::vector<RemovalRecord> removals_from_jsonl(std::string_view text, const BookNameTable& books) {
  std::vector<RemovalRecord> out;
  for_each_line(text, [&](const json& j) {
    RemovalRecord r;
    r.id = id_from_json(j.at("id"), books);
    r.version = j.at("version").get<std::string>();
    r.reason = parse_removal_reason(j.at("reason").get<std::string>());
    r.original_source = j.at("original_source").get<std::string>();
    r.original_reference = j.at("original_reference").get<std::string>();
    out.push_back(std::move(r));
  });
  return out;
}

std::string noise_report_to_json(const NoiseReport& r) {
  json j;
  j["verses_total"] = r.verses_total;
  j["verses_corrupted"] = r.verses_corrupted;
  j["chars_seen"] = r.chars_seen;
  j["chars_deleted"] = r.chars_deleted;
  j["chars_swapped"] = r.chars_swapped;
  j["chars_substituted"] = r.chars_substituted;
  j["chars_substitutable"] = r.chars_substitutable;
  j["swap_positions"] = r.swap_positions;
  return j.dump(2) + "\n";
}

std::string stat_report_to_json(const StatReport& r) {
  json j;
  j["total_pairs"] = r.total_pairs;
  j["distinct_verses"] = r.distinct_verses;
  j["distinct_books"] = r.distinct_books;
  json per = json::object();
  for (const auto& [label, n] : r.per_version) per[label] = n;
  j["per_version"] = per;
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::vector<Hypothesis> hypotheses_from_jsonl(std::string_view text, const BookNameTable& books) {
  std::vector<Hypothesis> out;
  for_each_line(text, [&](const json& j) {
    Hypothesis h;
    h.id = id_from_json(j.at("id"), books);
    h.version = j.at("version").get<std::string>();
    h.text = j.at("hypothesis").get<std::string>();
    out.push_back(std::move(h));
  });
  return out;
}

std::string metric_report_to_jsonl(const MetricReport& report) {
  std::string out;
  for (const auto& v : report.per_verse) {
    json j;
    j["id"] = id_to_json(v.id);
    j["version"] = v.version;
    j["score"] = v.score;
    out += dump(j);
    out += '\n';
  }
  return out;
}

std::string metric_summary_to_json(const MetricReport& report) {
  json j;
  j["verses"] = report.per_verse.size();
  j["corpus_mean"] = report.corpus_mean;
  return j.dump(2) + "\n";
}

}  // namespace forge
