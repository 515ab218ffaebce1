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
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/noise.hpp"
#include "corpusforge/paula.hpp"
#include "corpusforge/romanizer.hpp"
#include "forge_cli/config.hpp"
#include "forge_cli/manifest.hpp"

namespace forge::cli {

unsigned effective_threads(unsigned requested);

// {"doc","feat","value","reason"} per line.
std::string skipped_to_jsonl(const std::vector<SkippedAnnotation>& skipped);

// "<prefix>.noise-<percent>", e.g. test.noise-10 for rate 0.1.
std::string variant_stem(std::string_view prefix, double rate);

struct ArtifactOptions {
  const RomanizationTable* romanizer = nullptr;  // fills source_romanized
  bool export_tsv = false;
};

// Writes a corpus JSONL file (and its TSV export) with manifests. Returns
// the paths written.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& path,
                                                std::vector<CorpusRecord> records,
                                                const Provenance& provenance,
                                                const ArtifactOptions& options);

// Writes <stem>.jsonl and <stem>.report.json for every variant.
std::vector<std::filesystem::path> write_variants(const std::filesystem::path& dir,
                                                  std::string_view prefix,
                                                  const std::vector<CorpusVariant>& variants,
                                                  const Provenance& provenance,
                                                  const ArtifactOptions& options);

// Runs ingest, align, clean, split, stats and the noise sweeps into
// cfg.output_dir. Returns every file written, manifests included.
std::vector<std::filesystem::path> run_pipeline(const PipelineConfig& cfg, std::ostream& err);

}  // namespace forge::cli
