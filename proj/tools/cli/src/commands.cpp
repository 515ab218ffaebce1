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


#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include <CLI11.hpp>

#include "corpusforge/align.hpp"
#include "corpusforge/corpus_io.hpp"
#include "corpusforge/digest.hpp"
#include "corpusforge/drop.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/meteor.hpp"
#include "corpusforge/noise.hpp"
#include "corpusforge/paula.hpp"
#include "corpusforge/romanizer.hpp"
#include "corpusforge/split.hpp"
#include "corpusforge/utf8.hpp"
#include "corpusforge/version.hpp"
#include "forge_cli/cli.hpp"
#include "forge_cli/manifest.hpp"
#include "forge_cli/pipeline.hpp"

namespace forge::cli {
namespace fs = std::filesystem;

namespace {

// A bad option value detected after CLI11 accepted the syntax.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Params = std::vector<std::pair<std::string, std::string>>;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
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

BookNameTable load_books(const std::string& path) {
  if (path.empty()) return BookNameTable::standard();
  return BookNameTable::load(path);
}

void add_input(Provenance& prov, const std::string& path) {
  if (!path.empty()) prov.inputs.push_back(digest_input(path));
}

// Writes to the file (with manifest) or to out when no path was given.
void emit(const std::string& path, const std::string& bytes, const Provenance& prov,
          std::ostream& out) {
  if (path.empty()) {
    out << bytes;
  } else {
    write_artifact(path, bytes, prov);
  }
}

Provenance provenance(std::string command, const Params& params,
                      std::optional<std::uint64_t> seed = std::nullopt) {
  return {std::move(command), params_sha256(params), seed, {}};
}

// Restores fields the pair-level operations do not carry.
std::vector<CorpusRecord> rejoin(const std::vector<AlignedPair>& pairs,
                                 const std::vector<CorpusRecord>& originals) {
  std::map<std::pair<VerseId, std::string>, const CorpusRecord*> by_key;
  for (const auto& r : originals) by_key.emplace(std::make_pair(r.pair.id, r.pair.version), &r);
  std::vector<CorpusRecord> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    CorpusRecord r{p, std::nullopt, std::nullopt};
    if (auto it = by_key.find({p.id, p.version}); it != by_key.end()) {
      r.noise_applied = it->second->noise_applied;
      if (it->second->pair.source_text == p.source_text) {
        r.source_romanized = it->second->source_romanized;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct NoiseOptions {
  double p_delete = 0.02;
  double p_swap = 0.02;
  double p_substitute = 0.10;
  std::string lacuna = "#";
  std::string confusion_map;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  void attach(CLI::App* app) {
    app->add_option("--p-delete", p_delete, "Per-character lacuna probability")->capture_default_str();
    app->add_option("--p-swap", p_swap, "Per-position transposition probability")->capture_default_str();
    app->add_option("--p-substitute", p_substitute, "Per-character confusion probability")
        ->capture_default_str();
    app->add_option("--lacuna", lacuna, "Missing-character symbol")->capture_default_str();
    app->add_option("--confusion-map", confusion_map, "Confusion map TSV (default: built in)");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads, 0 for all cores")->capture_default_str();
  }

  NoiseConfig config(const ConfusionMap& map) const {
    NoiseConfig cfg;
    cfg.p_delete = p_delete;
    cfg.p_swap = p_swap;
    cfg.p_substitute = p_substitute;
    cfg.seed = seed;
    auto cps = utf8::decode(lacuna);
    if (cps.size() != 1) throw ValidationFailure("--lacuna must be a single character");
    cfg.lacuna_symbol = cps[0];
    try {
      cfg.validate(map);
    } catch (const Error& e) {
      throw ValidationFailure(e.what());
    }
    return cfg;
  }

  void add_params(Params& p) const {
    p.emplace_back("p_delete", fmt_double(p_delete));
    p.emplace_back("p_swap", fmt_double(p_swap));
    p.emplace_back("p_substitute", fmt_double(p_substitute));
    p.emplace_back("lacuna", lacuna);
    p.emplace_back("confusion_map", confusion_map);
    p.emplace_back("seed", std::to_string(seed));
  }
};

double parse_rate_option(const std::string& text) {
  try {
    return static_cast<double>(parse_rate(text)) / 1e6;
  } catch (const Error& e) {
    throw ValidationFailure(e.what());
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidBookTable:
    case ErrorCode::kInvalidTableEntry:
    case ErrorCode::kInvalidConfusionMap:
    case ErrorCode::kInvalidNoiseConfig:
    case ErrorCode::kInvalidArgument:
      return kExitValidation;
    default:
      return kExitProcessing;
  }
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const EnvLookup& env) {
  CLI::App app{"Build and evaluate Coptic-French parallel corpora.", "forge"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough(false);

  // ingest
  std::vector<std::string> ingest_docsets;
  std::string ingest_books, ingest_output, ingest_skipped;
  bool ingest_lenient = false;
  auto* ingest = app.add_subcommand("ingest", "Extract verse records from PAULA XML document sets");
  ingest->add_option("--docset", ingest_docsets, "TOKENS.xml,MARKS.xml,FEATS.xml (repeatable)")
      ->required();
  ingest->add_option("--books", ingest_books, "Book name table TSV (default: built in)");
  ingest->add_flag("--lenient", ingest_lenient, "Skip unresolvable verse annotations instead of failing");
  ingest->add_option("--output", ingest_output, "Verse JSONL (default: stdout)");
  ingest->add_option("--skipped", ingest_skipped, "Write skipped annotations as JSONL");

  // romanize
  std::string rom_input, rom_output, rom_table, rom_books, rom_text;
  std::string rom_unmapped = "replace";
  auto* romanize_cmd = app.add_subcommand("romanize", "Fill source_romanized in a corpus JSONL");
  auto* rom_in_opt = romanize_cmd->add_option("--input", rom_input, "Corpus JSONL");
  romanize_cmd->add_option("--text", rom_text, "Romanize one string to stdout")->excludes(rom_in_opt);
  romanize_cmd->add_option("--table", rom_table, "Romanization table TSV (default: built in)");
  romanize_cmd->add_option("--unmapped", rom_unmapped, "keep, drop, replace or replace:<c>")
      ->capture_default_str();
  romanize_cmd->add_option("--books", rom_books, "Book name table TSV");
  romanize_cmd->add_option("--output", rom_output, "Corpus JSONL (default: stdout)");

  // align
  std::string align_source, align_books, align_output, align_removals;
  std::vector<std::string> align_refs;
  auto* align_cmd = app.add_subcommand("align", "Join source verses with reference versions");
  align_cmd->add_option("--source", align_source, "Verse JSONL from ingest")->required();
  align_cmd->add_option("--reference", align_refs, "LABEL=PATH to a reference TSV (repeatable)")
      ->required();
  align_cmd->add_option("--books", align_books, "Book name table TSV");
  align_cmd->add_option("--output", align_output, "Corpus JSONL (default: stdout)");
  align_cmd->add_option("--removals", align_removals, "Removal log JSONL");

  // clean
  std::string clean_input, clean_output, clean_removals, clean_books;
  auto* clean_cmd = app.add_subcommand("clean", "Drop unusable pairs and strip reference annotations");
  clean_cmd->add_option("--input", clean_input, "Corpus JSONL")->required();
  clean_cmd->add_option("--output", clean_output, "Corpus JSONL (default: stdout)");
  clean_cmd->add_option("--removals", clean_removals, "Removal log JSONL");
  clean_cmd->add_option("--books", clean_books, "Book name table TSV");

  // split
  std::string split_input, split_books, split_dir = ".";
  std::string split_test_books = "1Cor,Mark,Gal,Heb";
  bool split_tsv = false;
  auto* split_cmd = app.add_subcommand("split", "Hold out whole books as the test set");
  split_cmd->add_option("--input", split_input, "Corpus JSONL")->required();
  split_cmd->add_option("--test-books", split_test_books, "Comma separated test books")
      ->capture_default_str();
  split_cmd->add_option("--output-dir", split_dir, "Directory for train.jsonl and test.jsonl")
      ->capture_default_str();
  split_cmd->add_flag("--tsv", split_tsv, "Also write TSV exports");
  split_cmd->add_option("--books", split_books, "Book name table TSV");

  // noise
  std::string noise_input, noise_output, noise_report, noise_books;
  std::string noise_rate = "1";
  NoiseOptions noise_opts;
  auto* noise_cmd = app.add_subcommand("noise", "Corrupt the source side of a corpus at one rate");
  noise_cmd->add_option("--input", noise_input, "Corpus JSONL")->required();
  noise_cmd->add_option("--rate", noise_rate, "Fraction of verses to corrupt")->capture_default_str();
  noise_cmd->add_option("--output", noise_output, "Corpus JSONL (default: stdout)");
  noise_cmd->add_option("--report", noise_report, "Noise report JSON (default: next to --output)");
  noise_cmd->add_option("--books", noise_books, "Book name table TSV");
  noise_opts.attach(noise_cmd);

  // sweep
  std::string sweep_input, sweep_dir = ".", sweep_prefix, sweep_books, sweep_rates;
  NoiseOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Write one corrupted variant per rate");
  sweep_cmd->add_option("--input", sweep_input, "Corpus JSONL")->required();
  sweep_cmd->add_option("--rates", sweep_rates, "Comma separated rates, e.g. 0,0.1,0.5,1")->required();
  sweep_cmd->add_option("--output-dir", sweep_dir, "Output directory")->capture_default_str();
  sweep_cmd->add_option("--prefix", sweep_prefix, "File name prefix (default: input stem)");
  sweep_cmd->add_option("--books", sweep_books, "Book name table TSV");
  sweep_opts.attach(sweep_cmd);

  // stats
  std::string stats_input, stats_output, stats_books;
  auto* stats_cmd = app.add_subcommand("stats", "Count pairs, verses and books in a corpus");
  stats_cmd->add_option("--input", stats_input, "Corpus JSONL")->required();
  stats_cmd->add_option("--output", stats_output, "Report JSON (default: stdout)");
  stats_cmd->add_option("--books", stats_books, "Book name table TSV");

  // meteor
  std::string met_hyps, met_refs, met_output, met_summary, met_books, met_hyp_text, met_ref_text;
  std::string met_stages = "exact,lowercase";
  MeteorParams met_params;
  unsigned met_threads = 1;
  auto* meteor_cmd = app.add_subcommand("meteor", "Score hypotheses with unigram METEOR");
  auto* met_hyps_opt = meteor_cmd->add_option("--hypotheses", met_hyps, "Hypothesis JSONL");
  auto* met_refs_opt = meteor_cmd->add_option("--references", met_refs, "Corpus JSONL with references");
  auto* met_hyp_opt = meteor_cmd->add_option("--hypothesis", met_hyp_text, "Single hypothesis string");
  auto* met_ref_opt = meteor_cmd->add_option("--reference", met_ref_text, "Single reference string");
  met_hyps_opt->needs(met_refs_opt)->excludes(met_hyp_opt);
  met_refs_opt->needs(met_hyps_opt)->excludes(met_ref_opt);
  met_hyp_opt->needs(met_ref_opt);
  met_ref_opt->needs(met_hyp_opt);
  meteor_cmd->add_option("--output", met_output, "Per-verse scores JSONL");
  meteor_cmd->add_option("--summary", met_summary, "Summary JSON (default: stdout)");
  meteor_cmd->add_option("--alpha", met_params.alpha, "Precision/recall weight")->capture_default_str();
  meteor_cmd->add_option("--beta", met_params.beta, "Fragmentation exponent")->capture_default_str();
  meteor_cmd->add_option("--gamma", met_params.gamma, "Fragmentation weight")->capture_default_str();
  meteor_cmd->add_option("--stages", met_stages, "exact and/or lowercase")->capture_default_str();
  meteor_cmd->add_option("--threads", met_threads, "Worker threads, 0 for all cores")
      ->capture_default_str();
  meteor_cmd->add_option("--books", met_books, "Book name table TSV");

  // drop-table
  std::string drop_input, drop_output;
  auto* drop_cmd = app.add_subcommand("drop-table", "Relative score drop from 0% to 100% test noise");
  drop_cmd->add_option("--input", drop_input, "Score table CSV")->required();
  drop_cmd->add_option("--output", drop_output, "Drop matrix CSV (default: stdout)");

  // pipeline
  std::string pipe_config, pipe_output_dir;
  std::vector<std::string> pipe_sets;
  std::optional<std::uint64_t> pipe_seed;
  std::optional<unsigned> pipe_threads;
  bool pipe_check = false;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run every stage from a config file");
  pipe_cmd->add_option("--config", pipe_config, "key=value config file")->required();
  pipe_cmd->add_option("--set", pipe_sets, "Override a config key, KEY=VALUE (repeatable)");
  pipe_cmd->add_option("--seed", pipe_seed, "Override seed");
  pipe_cmd->add_option("--output-dir", pipe_output_dir, "Override output_dir");
  pipe_cmd->add_option("--threads", pipe_threads, "Override threads");
  pipe_cmd->add_flag("--check", pipe_check, "Validate the config and exit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    if (dynamic_cast<const CLI::ConversionError*>(&e) != nullptr ||
        dynamic_cast<const CLI::ValidationError*>(&e) != nullptr) {
      return kExitValidation;
    }
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const std::string tag = "forge " + name;
  try {
    if (ingest->parsed()) {
      const auto books = load_books(ingest_books);
      Params params{{"books", ingest_books}, {"lenient", ingest_lenient ? "true" : "false"}};
      auto prov = provenance("ingest", params);
      add_input(prov, ingest_books);
      std::vector<std::vector<VerseRecord>> parts;
      std::vector<SkippedAnnotation> skipped;
      for (const auto& spec : ingest_docsets) {
        auto files = split_list(spec);
        if (files.size() != 3) {
          throw ValidationFailure("--docset expects TOKENS,MARKS,FEATS, got '" + spec + "'");
        }
        for (const auto& f : files) add_input(prov, f);
        PaulaDocumentSet docs{"", read_file(files[0]), read_file(files[1]), read_file(files[2])};
        auto result = parse_document_set(docs, books, ParseOptions{ingest_lenient});
        for (const auto& s : result.skipped) {
          err << tag << ": warning: " << s.doc_id << ": skipped " << s.feat_ref << " '" << s.value
              << "': " << s.reason << "\n";
        }
        skipped.insert(skipped.end(), result.skipped.begin(), result.skipped.end());
        parts.push_back(std::move(result.records));
      }
      auto records = merge_records(std::move(parts));
      emit(ingest_output, verse_records_to_jsonl(records), prov, out);
      if (!ingest_skipped.empty()) write_artifact(ingest_skipped, skipped_to_jsonl(skipped), prov);
      err << tag << ": " << records.size() << " verses, " << skipped.size() << " skipped\n";
      return kExitOk;
    }

    if (romanize_cmd->parsed()) {
      RomanizationTable table = rom_table.empty() ? RomanizationTable::standard()
                                                  : RomanizationTable::load(rom_table);
      try {
        table.set_policy(UnmappedPolicy::parse(rom_unmapped));
      } catch (const Error& e) {
        throw ValidationFailure(e.what());
      }
      if (!rom_text.empty() || rom_input.empty()) {
        if (rom_input.empty() && romanize_cmd->count("--text") == 0) {
          throw ValidationFailure("one of --input or --text is required");
        }
        out << romanize(rom_text, table) << "\n";
        return kExitOk;
      }
      const auto books = load_books(rom_books);
      auto records = corpus_from_jsonl(read_file(rom_input), books);
      for (auto& r : records) r.source_romanized = romanize(r.pair.source_text, table);
      auto prov = provenance("romanize", {{"table", rom_table}, {"unmapped", rom_unmapped}});
      add_input(prov, rom_table);
      add_input(prov, rom_input);
      emit(rom_output, corpus_to_jsonl(records), prov, out);
      return kExitOk;
    }

    if (align_cmd->parsed()) {
      const auto books = load_books(align_books);
      auto prov = provenance("align", {{"books", align_books}});
      add_input(prov, align_books);
      add_input(prov, align_source);
      auto verses = verse_records_from_jsonl(read_file(align_source), books);
      std::vector<ReferenceVersion> versions;
      std::set<std::string> labels;
      for (const auto& spec : align_refs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
          throw ValidationFailure("--reference expects LABEL=PATH, got '" + spec + "'");
        }
        std::string label = spec.substr(0, eq);
        if (!labels.insert(label).second) throw ValidationFailure("duplicate version label " + label);
        add_input(prov, spec.substr(eq + 1));
        versions.push_back(load_reference_tsv(label, spec.substr(eq + 1), books));
      }
      auto result = align(verses, versions);
      emit(align_output, corpus_to_jsonl(to_records(result.pairs)), prov, out);
      if (!align_removals.empty()) write_artifact(align_removals, removals_to_jsonl(result.removed), prov);
      err << tag << ": " << result.pairs.size() << " pairs, " << result.removed.size() << " removed\n";
      return kExitOk;
    }

    if (clean_cmd->parsed()) {
      const auto books = load_books(clean_books);
      auto prov = provenance("clean", {{"books", clean_books}});
      add_input(prov, clean_books);
      add_input(prov, clean_input);
      auto records = corpus_from_jsonl(read_file(clean_input), books);
      auto result = clean(to_pairs(records));
      emit(clean_output, corpus_to_jsonl(rejoin(result.kept, records)), prov, out);
      if (!clean_removals.empty()) write_artifact(clean_removals, removals_to_jsonl(result.removed), prov);
      err << tag << ": kept " << result.kept.size() << ", removed " << result.removed.size() << "\n";
      return kExitOk;
    }

    if (split_cmd->parsed()) {
      const auto books = load_books(split_books);
      SplitConfig cfg;
      try {
        cfg = SplitConfig::from_list(split_test_books, books);
        cfg.validate(books);
      } catch (const Error& e) {
        throw ValidationFailure(std::string("--test-books: ") + e.what());
      }
      std::string canonical_books;
      for (const auto& b : cfg.test_books) canonical_books += (canonical_books.empty() ? "" : ",") + b;
      auto prov = provenance("split", {{"books", split_books}, {"test_books", canonical_books}});
      add_input(prov, split_books);
      add_input(prov, split_input);
      auto records = corpus_from_jsonl(read_file(split_input), books);
      auto result = split(to_pairs(records), cfg);
      if (!verify_no_leakage(result.train, result.test)) {
        throw Error(ErrorCode::kInvalidArgument, "train/test leakage detected");
      }
      if (result.empty_test) err << tag << ": warning: no verse belongs to a test book\n";
      ArtifactOptions opts{nullptr, split_tsv};
      write_corpus(fs::path(split_dir) / "train.jsonl", rejoin(result.train, records), prov, opts);
      write_corpus(fs::path(split_dir) / "test.jsonl", rejoin(result.test, records), prov, opts);
      err << tag << ": " << result.train.size() << " train, " << result.test.size() << " test\n";
      return kExitOk;
    }

    if (noise_cmd->parsed() || sweep_cmd->parsed()) {
      const bool single = noise_cmd->parsed();
      const NoiseOptions& opts = single ? noise_opts : sweep_opts;
      const std::string& input = single ? noise_input : sweep_input;
      const auto books = load_books(single ? noise_books : sweep_books);
      const ConfusionMap map =
          opts.confusion_map.empty() ? ConfusionMap::standard() : ConfusionMap::load(opts.confusion_map);
      const NoiseConfig base = opts.config(map);

      std::vector<double> rates;
      std::set<RatePpm> seen;
      for (const auto& item : single ? std::vector<std::string>{noise_rate} : split_list(sweep_rates)) {
        double r = parse_rate_option(item);
        if (!seen.insert(rate_to_ppm(r)).second) throw ValidationFailure("duplicate rate " + item);
        rates.push_back(r);
      }
      if (rates.empty()) throw ValidationFailure("--rates is empty");

      Params params;
      opts.add_params(params);
      std::string rate_list;
      for (double r : rates) rate_list += (rate_list.empty() ? "" : ",") + fmt_double(r);
      params.emplace_back("rates", rate_list);
      auto prov = provenance(name, params, opts.seed);
      add_input(prov, opts.confusion_map);
      add_input(prov, input);

      auto records = corpus_from_jsonl(read_file(input), books);
      for (const auto& r : records) {
        if (r.source_romanized) {
          err << tag << ": warning: input is romanized; corrupted sources are written unromanized\n";
          break;
        }
      }
      auto variants = sweep(to_pairs(records), base, map, rates, effective_threads(opts.threads));

      if (single) {
        const auto& v = variants.front();
        emit(noise_output, corpus_to_jsonl(to_records(v.pairs)), prov, out);
        std::string report = noise_report;
        if (report.empty() && !noise_output.empty()) {
          auto p = fs::path(noise_output);
          report = (p.parent_path() / (p.stem().string() + ".report.json")).string();
        }
        if (report.empty()) err << noise_report_to_json(v.report);
        else write_artifact(report, noise_report_to_json(v.report), prov);
        err << tag << ": corrupted " << v.report.verses_corrupted << " of " << v.report.verses_total
            << " pairs\n";
      } else {
        const std::string prefix =
            sweep_prefix.empty() ? fs::path(sweep_input).stem().string() : sweep_prefix;
        write_variants(sweep_dir, prefix, variants, prov, {});
        err << tag << ": wrote " << variants.size() << " variants to " << sweep_dir << "\n";
      }
      return kExitOk;
    }

    if (stats_cmd->parsed()) {
      const auto books = load_books(stats_books);
      auto prov = provenance("stats", {{"books", stats_books}});
      add_input(prov, stats_books);
      add_input(prov, stats_input);
      auto records = corpus_from_jsonl(read_file(stats_input), books);
      emit(stats_output, stat_report_to_json(corpus_stats(to_pairs(records))), prov, out);
      return kExitOk;
    }

    if (meteor_cmd->parsed()) {
      met_params.stages.clear();
      for (const auto& s : split_list(met_stages)) {
        if (s == "exact") met_params.stages.push_back(MatchStage::kExact);
        else if (s == "lowercase") met_params.stages.push_back(MatchStage::kLowercase);
        else throw ValidationFailure("unknown stage '" + s + "'");
      }
      try {
        met_params.validate();
      } catch (const Error& e) {
        throw ValidationFailure(e.what());
      }
      if (met_hyps.empty()) {
        if (meteor_cmd->count("--hypothesis") == 0) {
          throw ValidationFailure("give --hypotheses/--references or --hypothesis/--reference");
        }
        out << fmt_double(meteor(met_hyp_text, met_ref_text, met_params)) << "\n";
        return kExitOk;
      }
      const auto books = load_books(met_books);
      Params params{{"alpha", fmt_double(met_params.alpha)},
                    {"beta", fmt_double(met_params.beta)},
                    {"gamma", fmt_double(met_params.gamma)},
                    {"stages", met_stages}};
      auto prov = provenance("meteor", params);
      add_input(prov, met_hyps);
      add_input(prov, met_refs);
      auto hyps = hypotheses_from_jsonl(read_file(met_hyps), books);
      auto refs = to_pairs(corpus_from_jsonl(read_file(met_refs), books));
      auto report = evaluate_corpus(hyps, refs, met_params, effective_threads(met_threads));
      if (!met_output.empty()) write_artifact(met_output, metric_report_to_jsonl(report), prov);
      emit(met_summary, metric_summary_to_json(report), prov, out);
      return kExitOk;
    }

    if (drop_cmd->parsed()) {
      auto prov = provenance("drop-table", {});
      add_input(prov, drop_input);
      auto table = ScoreTable::load_csv(drop_input);
      emit(drop_output, drop_table(table).to_csv(), prov, out);
      return kExitOk;
    }

    if (pipe_cmd->parsed()) {
      Settings overrides;
      for (const auto& kv : pipe_sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw ValidationFailure("--set expects KEY=VALUE, got '" + kv + "'");
        }
        overrides[utf8::trim(std::string_view(kv).substr(0, eq))] =
            Setting{utf8::trim(std::string_view(kv).substr(eq + 1)), SettingSource::kFlag, 0};
      }
      if (pipe_seed) overrides["seed"] = Setting{std::to_string(*pipe_seed), SettingSource::kFlag, 0};
      if (!pipe_output_dir.empty()) {
        overrides["output_dir"] = Setting{pipe_output_dir, SettingSource::kFlag, 0};
      }
      if (pipe_threads) {
        overrides["threads"] = Setting{std::to_string(*pipe_threads), SettingSource::kFlag, 0};
      }
      auto cfg = validate_config(pipe_config, overrides, env);
      if (pipe_check) {
        err << tag << ": configuration is valid\n";
        return kExitOk;
      }
      run_pipeline(cfg, err);
      return kExitOk;
    }
  } catch (const ValidationFailure& e) {
    err << tag << ": error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) err << tag << ": config: " << v << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << tag << ": error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << tag << ": error: " << e.what() << "\n";
    return kExitProcessing;
  }
  err << "forge: no subcommand handled\n";
  return kExitUsage;
}

}  // namespace forge::cli
