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


#include "forge_cli/pipeline.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "corpusforge/align.hpp"
#include "corpusforge/digest.hpp"
#include "corpusforge/drop.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/paula.hpp"
#include "corpusforge/split.hpp"

namespace forge::cli {
namespace fs = std::filesystem;

namespace {

fs::path with_suffix(fs::path p, std::string_view suffix) {
  p += std::string(suffix);
  return p;
}

}  // namespace

std::string skipped_to_jsonl(const std::vector<SkippedAnnotation>& skipped) {
  using json = nlohmann::ordered_json;
  std::string out;
  for (const auto& s : skipped) {
    json j;
    j["doc"] = s.doc_id;
    j["feat"] = s.feat_ref;
    j["value"] = s.value;
    j["reason"] = s.reason;
    out += j.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
  }
  return out;
}

unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string variant_stem(std::string_view prefix, double rate) {
  std::string pct = format_rate_percent(rate_to_ppm(rate));
  pct.pop_back();
  return std::string(prefix) + ".noise-" + pct;
}

std::vector<fs::path> write_corpus(const fs::path& path, std::vector<CorpusRecord> records,
                                   const Provenance& provenance,
                                   const ArtifactOptions& options) {
  if (options.romanizer != nullptr) {
    for (auto& r : records) r.source_romanized = romanize(r.pair.source_text, *options.romanizer);
  }
  std::vector<fs::path> written;
  write_artifact(path, corpus_to_jsonl(records), provenance);
  written.push_back(path);
  written.push_back(with_suffix(path, ".manifest.json"));
  if (options.export_tsv) {
    auto tsv = path;
    tsv.replace_extension(".tsv");
    write_artifact(tsv, corpus_to_tsv(records), provenance);
    written.push_back(tsv);
    written.push_back(with_suffix(tsv, ".manifest.json"));
  }
  return written;
}

std::vector<fs::path> write_variants(const fs::path& dir, std::string_view prefix,
                                     const std::vector<CorpusVariant>& variants,
                                     const Provenance& provenance,
                                     const ArtifactOptions& options) {
  std::vector<fs::path> written;
  for (const auto& variant : variants) {
    const std::string stem = variant_stem(prefix, variant.rate);
    auto files = write_corpus(dir / (stem + ".jsonl"), to_records(variant.pairs), provenance, options);
    written.insert(written.end(), files.begin(), files.end());
    auto report = dir / (stem + ".report.json");
    write_artifact(report, noise_report_to_json(variant.report), provenance);
    written.push_back(report);
    written.push_back(with_suffix(report, ".manifest.json"));
  }
  return written;
}

std::vector<fs::path> run_pipeline(const PipelineConfig& cfg, std::ostream& err) {
  const unsigned threads = effective_threads(cfg.threads);
  const BookNameTable books = cfg.books ? BookNameTable::load(*cfg.books) : BookNameTable::standard();
  RomanizationTable romanizer = cfg.romanization_table ? RomanizationTable::load(*cfg.romanization_table)
                                                       : RomanizationTable::standard();
  romanizer.set_policy(UnmappedPolicy::parse(cfg.unmapped));
  const ConfusionMap confusion =
      cfg.confusion_map ? ConfusionMap::load(*cfg.confusion_map) : ConfusionMap::standard();

  Provenance prov{"pipeline", sha256_hex(cfg.canonical), cfg.seed, {}};
  for (const auto& p : {cfg.books, cfg.romanization_table, cfg.confusion_map}) {
    if (p) prov.inputs.push_back(digest_input(*p));
  }
  for (const auto& d : cfg.paula) {
    for (const auto* p : {&d.tokens, &d.marks, &d.feats}) prov.inputs.push_back(digest_input(*p));
  }
  for (const auto& r : cfg.references) prov.inputs.push_back(digest_input(r.path));

  ArtifactOptions artifacts{cfg.romanize ? &romanizer : nullptr, cfg.export_tsv};
  const fs::path& dir = cfg.output_dir;
  std::vector<fs::path> written;
  auto add = [&](std::vector<fs::path> files) {
    written.insert(written.end(), files.begin(), files.end());
  };
  auto emit = [&](const fs::path& path, const std::string& bytes) {
    write_artifact(path, bytes, prov);
    written.push_back(path);
    written.push_back(with_suffix(path, ".manifest.json"));
  };

  std::vector<std::vector<VerseRecord>> parts;
  std::vector<SkippedAnnotation> skipped;
  for (const auto& d : cfg.paula) {
    PaulaDocumentSet docs{d.name, read_file(d.tokens), read_file(d.marks), read_file(d.feats)};
    auto result = parse_document_set(docs, books, ParseOptions{cfg.lenient});
    for (const auto& s : result.skipped) {
      err << "forge pipeline: warning: " << s.doc_id << ": skipped " << s.feat_ref << " '"
          << s.value << "': " << s.reason << "\n";
    }
    skipped.insert(skipped.end(), result.skipped.begin(), result.skipped.end());
    parts.push_back(std::move(result.records));
  }
  const auto verses = merge_records(std::move(parts));
  emit(dir / "verses.jsonl", verse_records_to_jsonl(verses));
  if (cfg.lenient) emit(dir / "skipped.jsonl", skipped_to_jsonl(skipped));

  std::vector<ReferenceVersion> versions;
  for (const auto& r : cfg.references) versions.push_back(load_reference_tsv(r.label, r.path, books));
  auto aligned = align(verses, versions);
  auto cleaned = clean(aligned.pairs);
  auto removed = std::move(aligned.removed);
  removed.insert(removed.end(), cleaned.removed.begin(), cleaned.removed.end());
  sort_removals(removed);
  add(write_corpus(dir / "corpus.jsonl", to_records(cleaned.kept), prov, artifacts));
  emit(dir / "removed.jsonl", removals_to_jsonl(removed));

  auto parts_split = split(cleaned.kept, cfg.split);
  if (!verify_no_leakage(parts_split.train, parts_split.test)) {
    throw Error(ErrorCode::kInvalidArgument, "train/test leakage detected");
  }
  if (parts_split.empty_test) err << "forge pipeline: warning: no verse belongs to a test book\n";
  add(write_corpus(dir / "train.jsonl", to_records(parts_split.train), prov, artifacts));
  add(write_corpus(dir / "test.jsonl", to_records(parts_split.test), prov, artifacts));

  if (cfg.emit_stats) {
    emit(dir / "stats.json", stat_report_to_json(corpus_stats(cleaned.kept)));
    emit(dir / "stats.train.json", stat_report_to_json(corpus_stats(parts_split.train)));
    emit(dir / "stats.test.json", stat_report_to_json(corpus_stats(parts_split.test)));
  }

  if (!cfg.rates.empty()) {
    if (cfg.noise_train) {
      add(write_variants(dir, "train", sweep(parts_split.train, cfg.noise, confusion, cfg.rates, threads),
                         prov, artifacts));
    }
    if (cfg.noise_test) {
      add(write_variants(dir, "test", sweep(parts_split.test, cfg.noise, confusion, cfg.rates, threads),
                         prov, artifacts));
    }
  }
  err << "forge pipeline: " << cleaned.kept.size() << " pairs (" << parts_split.train.size()
      << " train, " << parts_split.test.size() << " test), " << removed.size() << " removed, "
      << written.size() << " files in " << dir.string() << "\n";
  return written;
}

}  // namespace forge::cli
