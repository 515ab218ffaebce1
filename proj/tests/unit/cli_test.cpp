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


#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/digest.hpp"
#include "forge_cli/cli.hpp"
#include "forge_cli/config.hpp"
#include "support.hpp"

using namespace forge;
using namespace forge::cli;
using forge::testing::fixture;
using forge::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out, err;
  EnvLookup lookup = [env](const std::string& k) -> std::optional<std::string> {
    auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  int code = run_subcommand(args, out, err, lookup);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return files;
}

std::string demo_docset() {
  return (fixture("paula/demo.tok.xml").string() + "," + fixture("paula/demo.mark.xml").string() +
          "," + fixture("paula/demo.feat.xml").string());
}

void write_config(const fs::path& path, const std::string& extra) {
  write_file(path, "# demo run\npaula.demo = " + demo_docset() + "\nreference.v1 = " +
                       fixture("reference.v1.tsv").string() + "\nreference.v2 = " +
                       fixture("reference.v2.tsv").string() + "\n" + extra);
}

void write_corpus_file(const fs::path& path, std::size_t verses, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  write_file(path, corpus_to_jsonl(to_records(forge::testing::synthetic_corpus(rng, verses))));
}

}  // namespace

TEST(Config, MinimalIsValid) {
  TempDir dir;
  write_config(dir / "run.cfg", "output_dir = out\n");
  auto cfg = validate_config(dir / "run.cfg", {}, nullptr);
  EXPECT_EQ(cfg.output_dir, (dir / "out").lexically_normal());
  EXPECT_EQ(cfg.paula.size(), 1u);
  EXPECT_EQ(cfg.references.size(), 2u);
  EXPECT_EQ(cfg.references[0].label, "v1");
  EXPECT_EQ(cfg.split.test_books, SplitConfig{}.test_books);
  EXPECT_FALSE(cfg.romanize);
  EXPECT_TRUE(cfg.rates.empty());
}

TEST(Config, MissingOutputDirIsOneViolation) {
  TempDir dir;
  write_config(dir / "run.cfg", "");
  try {
    validate_config(dir / "run.cfg", {}, nullptr);
    FAIL();
  } catch (const ConfigError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_NE(e.violations()[0].find("output_dir"), std::string::npos);
  }
}

TEST(Config, AllViolationsReported) {
  TempDir dir;
  write_config(dir / "run.cfg",
               "output_dir = out\nseed = -3\nnoise.p_swap = 2\nbogus = 1\nnoise.rates = 0,abc\n"
               "test_books = Mark,Narnia\nreference.v3 = nope.tsv\njunk line\n");
  try {
    validate_config(dir / "run.cfg", {}, nullptr);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.violations().size(), 7u) << e.what();
  }
}

TEST(Config, Precedence) {
  TempDir dir;
  write_config(dir / "run.cfg", "output_dir = out\nseed = 1\nnoise.p_delete = 0.1\nthreads = 2\n");
  std::map<std::string, std::string> env{{"FORGE_SEED", "2"}, {"FORGE_NOISE_P_DELETE", "0.2"}};
  EnvLookup lookup = [&](const std::string& k) -> std::optional<std::string> {
    auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  auto cfg = validate_config(dir / "run.cfg", {}, lookup);
  EXPECT_EQ(cfg.seed, 2u);
  EXPECT_DOUBLE_EQ(cfg.noise.p_delete, 0.2);
  Settings flags{{"seed", {"3", SettingSource::kFlag, 0}}};
  cfg = validate_config(dir / "run.cfg", flags, lookup);
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.noise.seed, 3u);
  EXPECT_EQ(cfg.threads, 2u);
  EXPECT_EQ(env_name("noise.p_delete"), "FORGE_NOISE_P_DELETE");

  auto other = validate_config(dir / "run.cfg", {{"threads", {"8", SettingSource::kFlag, 0}}}, lookup);
  EXPECT_EQ(other.canonical, validate_config(dir / "run.cfg", {}, lookup).canonical);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"drop-table", "--nope"}).code, kExitUsage);
  EXPECT_EQ(run({"drop-table"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  auto version = run({"--version"});
  EXPECT_EQ(version.code, kExitOk);
  EXPECT_FALSE(version.out.empty());
}

TEST(Cli, ValidationAndProcessingErrors) {
  TempDir dir;
  write_corpus_file(dir / "c.jsonl", 5, 1);
  const auto in = (dir / "c.jsonl").string();
  EXPECT_EQ(run({"sweep", "--input", in, "--rates", "0,abc"}).code, kExitValidation);
  EXPECT_EQ(run({"sweep", "--input", in, "--rates", "0.5,50%"}).code, kExitValidation);
  EXPECT_EQ(run({"noise", "--input", in, "--p-swap", "1.5"}).code, kExitValidation);
  EXPECT_EQ(run({"noise", "--input", in, "--seed", "x"}).code, kExitValidation);
  EXPECT_EQ(run({"split", "--input", in, "--test-books", "Narnia"}).code, kExitValidation);
  EXPECT_EQ(run({"stats", "--input", (dir / "missing.jsonl").string()}).code, kExitProcessing);
  write_file(dir / "bad.jsonl", "{}\n");
  auto bad = run({"stats", "--input", (dir / "bad.jsonl").string()});
  EXPECT_EQ(bad.code, kExitProcessing);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos);
  EXPECT_TRUE(bad.out.empty());
}

TEST(Cli, SweepWritesOneVariantPerRate) {
  TempDir dir;
  write_corpus_file(dir / "test.jsonl", 40, 2);
  auto r = run({"sweep", "--input", (dir / "test.jsonl").string(), "--rates", "0,0.1,0.3,0.5,1.0",
                "--seed", "42", "--output-dir", (dir / "out").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  for (const char* pct : {"0", "10", "30", "50", "100"}) {
    const auto stem = std::string("test.noise-") + pct;
    EXPECT_TRUE(fs::exists(dir / "out" / (stem + ".jsonl"))) << stem;
    EXPECT_TRUE(fs::exists(dir / "out" / (stem + ".jsonl.manifest.json")));
    EXPECT_TRUE(fs::exists(dir / "out" / (stem + ".report.json")));
  }
  EXPECT_EQ(tree(dir / "out").size(), 20u);

  auto manifest = nlohmann::json::parse(read_file(dir / "out/test.noise-10.jsonl.manifest.json"));
  EXPECT_EQ(manifest["tool"], "forge");
  EXPECT_EQ(manifest["command"], "sweep");
  EXPECT_EQ(manifest["seed"], 42);
  EXPECT_EQ(manifest["output"]["path"], "test.noise-10.jsonl");
  EXPECT_EQ(manifest["inputs"].size(), 1u);
  EXPECT_EQ(manifest["inputs"][0]["sha256"], sha256_file(dir / "test.jsonl"));
  EXPECT_EQ(manifest["output"]["sha256"], sha256_file(dir / "out/test.noise-10.jsonl"));

  auto zero = corpus_from_jsonl(read_file(dir / "out/test.noise-0.jsonl"), BookNameTable::standard());
  auto input = corpus_from_jsonl(read_file(dir / "test.jsonl"), BookNameTable::standard());
  ASSERT_EQ(zero.size(), input.size());
  for (std::size_t i = 0; i < zero.size(); ++i) {
    EXPECT_EQ(zero[i].pair, input[i].pair);
    EXPECT_EQ(zero[i].noise_applied, false);
  }
}

TEST(Cli, NoiseMatchesSweepVariant) {
  TempDir dir;
  write_corpus_file(dir / "test.jsonl", 30, 3);
  const auto in = (dir / "test.jsonl").string();
  ASSERT_EQ(run({"sweep", "--input", in, "--rates", "0.5", "--seed", "9", "--output-dir",
                 (dir / "s").string()})
                .code,
            kExitOk);
  auto single = run({"noise", "--input", in, "--rate", "50%", "--seed", "9"});
  ASSERT_EQ(single.code, kExitOk);
  EXPECT_EQ(single.out, read_file(dir / "s/test.noise-50.jsonl"));
}

TEST(Cli, IngestAlignCleanSplitStats) {
  TempDir dir;
  auto r = run({"ingest", "--docset", demo_docset(), "--output", (dir / "verses.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = run({"align", "--source", (dir / "verses.jsonl").string(), "--reference",
           "v1=" + fixture("reference.v1.tsv").string(), "--reference",
           "v2=" + fixture("reference.v2.tsv").string(), "--output", (dir / "aligned.jsonl").string(),
           "--removals", (dir / "align.removed.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = run({"clean", "--input", (dir / "aligned.jsonl").string(), "--output",
           (dir / "corpus.jsonl").string(), "--removals", (dir / "clean.removed.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = run({"split", "--input", (dir / "corpus.jsonl").string(), "--test-books", "1Cor,Mark,Gal,Heb",
           "--output-dir", dir.path().string(), "--tsv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "train.tsv"));

  const auto& books = BookNameTable::standard();
  auto corpus = corpus_from_jsonl(read_file(dir / "corpus.jsonl"), books);
  auto train = corpus_from_jsonl(read_file(dir / "train.jsonl"), books);
  auto test = corpus_from_jsonl(read_file(dir / "test.jsonl"), books);
  EXPECT_EQ(train.size() + test.size(), corpus.size());
  for (const auto& t : test) EXPECT_TRUE(t.pair.id.book == "Mark" || t.pair.id.book == "1Cor");

  std::vector<std::string> kept;
  for (const auto& c : corpus) kept.push_back(c.pair.id.to_string() + "/" + c.pair.version);
  EXPECT_EQ(kept, (std::vector<std::string>{"Gen 1:1/v1", "Gen 1:1/v2", "Mark 1:1/v1", "Mark 1:1/v2",
                                            "Mark 1:2/v1", "Rom 1:1/v2", "1Cor 1:1/v1",
                                            "1Cor 1:1/v2"}));
  EXPECT_EQ(corpus[2].pair.reference_text, "Commencement de la bonne nouvelle de Jesus");
  EXPECT_EQ(corpus[1].pair.reference_text, "Au debut Dieu fit");

  auto removed_align = removals_from_jsonl(read_file(dir / "align.removed.jsonl"), books);
  auto removed_clean = removals_from_jsonl(read_file(dir / "clean.removed.jsonl"), books);
  EXPECT_EQ(removed_align.size(), 3u);  // Mark 1:2/v2, Mark 1:3/v2, Luke 1:1/v1
  EXPECT_EQ(removed_clean.size(), 2u);  // Mark 1:3/v1 ellipsis, Rom 1:1/v1 blank

  r = run({"stats", "--input", (dir / "corpus.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk);
  auto stats = nlohmann::json::parse(r.out);
  EXPECT_EQ(stats["total_pairs"], 8);
  EXPECT_EQ(stats["distinct_verses"], 5);
  EXPECT_EQ(stats["distinct_books"], 4);

  r = run({"romanize", "--input", (dir / "test.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"source_romanized\":\"paulos papostolos\""), std::string::npos);
}

TEST(Cli, MeteorAndDropTable) {
  auto r = run({"meteor", "--hypothesis", "a b c d e f g h i j", "--reference", "a b c d e f g h i j"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NEAR(std::stod(r.out), 0.9995, 1e-12);

  r = run({"drop-table", "--input", fixture("robustness_scores.csv").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "model,train_noise,BERTScore,BLEURT,COMET,METEOR");
  EXPECT_NE(r.out.find("Helsinki,0%,7.3,35.1,20.8,27.0\n"), std::string::npos);
  EXPECT_NE(r.out.find("Hiero,0%,8.4,53.3,28.7,33.0\n"), std::string::npos);

  TempDir dir;
  write_file(dir / "hyp.jsonl",
             R"({"id":{"book":"Mark","chapter":1,"verse":1},"version":"v1","hypothesis":"a b"})"
             "\n");
  write_file(dir / "ref.jsonl",
             R"({"id":{"book":"Mark","chapter":1,"verse":1},"version":"v1","source_raw":"x","reference":"a b"})"
             "\n");
  r = run({"meteor", "--hypotheses", (dir / "hyp.jsonl").string(), "--references",
           (dir / "ref.jsonl").string(), "--output", (dir / "scores.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary["verses"], 1);
  EXPECT_TRUE(fs::exists(dir / "scores.jsonl.manifest.json"));
}

TEST(Cli, PipelineIsReproducible) {
  TempDir dir;
  write_config(dir / "run.cfg",
               "output_dir = out\nseed = 42\nromanize = true\nexport_tsv = true\n"
               "noise.rates = 0,0.5,1\n");
  auto a = run({"pipeline", "--config", (dir / "run.cfg").string(), "--threads", "1"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  auto first = tree(dir / "out");
  fs::remove_all(dir / "out");
  auto b = run({"pipeline", "--config", (dir / "run.cfg").string(), "--threads", "4"});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(tree(dir / "out"), first);

  for (const char* name : {"verses.jsonl", "corpus.jsonl", "removed.jsonl", "train.jsonl",
                           "test.jsonl", "stats.json", "test.noise-50.jsonl",
                           "train.noise-100.report.json", "test.tsv"}) {
    EXPECT_TRUE(first.contains(name)) << name;
    EXPECT_TRUE(first.contains(std::string(name) + ".manifest.json")) << name;
  }
  for (const auto& [name, bytes] : first) {
    if (name.ends_with(".manifest.json")) continue;
    EXPECT_TRUE(first.contains(name + ".manifest.json")) << name;
  }
  auto manifest = nlohmann::json::parse(first.at("train.jsonl.manifest.json"));
  EXPECT_EQ(manifest["command"], "pipeline");
  EXPECT_EQ(manifest["inputs"].size(), 5u);

  auto c = run({"pipeline", "--config", (dir / "run.cfg").string(), "--seed", "43", "--output-dir",
                (dir / "other").string()});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_NE(read_file(dir / "other/test.noise-50.jsonl"), first.at("test.noise-50.jsonl"));
  EXPECT_EQ(read_file(dir / "other/test.noise-0.jsonl"), first.at("test.noise-0.jsonl"));
}

TEST(Cli, PipelineCheckReportsViolations) {
  TempDir dir;
  write_config(dir / "run.cfg", "noise.p_delete = 3\n");
  auto r = run({"pipeline", "--config", (dir / "run.cfg").string(), "--check"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("output_dir"), std::string::npos);
  EXPECT_NE(r.err.find("noise.p_delete"), std::string::npos);
  r = run({"pipeline", "--config", (dir / "run.cfg").string(), "--check"},
          {{"FORGE_OUTPUT_DIR", (dir / "o").string()}, {"FORGE_NOISE_P_DELETE", "0.5"}});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}
