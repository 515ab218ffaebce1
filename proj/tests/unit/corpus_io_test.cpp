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

#include "corpusforge/corpus_io.hpp"
#include "corpusforge/digest.hpp"
#include "corpusforge/error.hpp"
#include "support.hpp"

using namespace forge;

namespace {

CorpusRecord record() {
  return {{make_verse_id(BookNameTable::standard(), "Mark", 2, 3), "ⲁⲃ\t#", "Il dit: \"Viens\"", "v1"},
          "ab\t#",
          true};
}

}  // namespace

TEST(CorpusIo, FieldOrderIsFixed) {
  EXPECT_EQ(corpus_to_jsonl({record()}),
            "{\"id\":{\"book\":\"Mark\",\"chapter\":2,\"verse\":3},\"version\":\"v1\","
            "\"source_raw\":\"ⲁⲃ\\t#\",\"source_romanized\":\"ab\\t#\","
            "\"reference\":\"Il dit: \\\"Viens\\\"\",\"noise_applied\":true}\n");
  auto plain = record();
  plain.source_romanized.reset();
  plain.noise_applied.reset();
  EXPECT_EQ(corpus_to_jsonl({plain}),
            "{\"id\":{\"book\":\"Mark\",\"chapter\":2,\"verse\":3},\"version\":\"v1\","
            "\"source_raw\":\"ⲁⲃ\\t#\",\"reference\":\"Il dit: \\\"Viens\\\"\"}\n");
}

TEST(CorpusIo, RoundTripAndAliases) {
  auto r = record();
  EXPECT_EQ(corpus_from_jsonl(corpus_to_jsonl({r, r}), BookNameTable::standard()),
            (std::vector<CorpusRecord>{r, r}));
  auto aliased = corpus_from_jsonl(
      R"({"id":{"book":"Marc","chapter":2,"verse":3},"version":"v1","source_raw":"x","reference":"y"})"
      "\n\n",
      BookNameTable::standard());
  ASSERT_EQ(aliased.size(), 1u);
  EXPECT_EQ(aliased[0].pair.id.book, "Mark");
}

TEST(CorpusIo, BadLinesCarryLineNumbers) {
  try {
    corpus_from_jsonl(corpus_to_jsonl({record()}) + "{\"id\":1}\n", BookNameTable::standard());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRecord);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(corpus_from_jsonl("not json\n", BookNameTable::standard()), Error);
  EXPECT_THROW(corpus_from_jsonl(
                   R"({"id":{"book":"Mark","chapter":0,"verse":3},"version":"v","source_raw":"","reference":""})",
                   BookNameTable::standard()),
               Error);
}

TEST(CorpusIo, TsvExport) {
  EXPECT_EQ(corpus_to_tsv({record()}), "Mark 2:3\tv1\tab #\tIl dit: \"Viens\"\n");
}

TEST(CorpusIo, Reports) {
  NoiseReport r;
  r.verses_total = 3;
  r.chars_seen = 10;
  EXPECT_EQ(noise_report_to_json(r),
            "{\n  \"verses_total\": 3,\n  \"verses_corrupted\": 0,\n  \"chars_seen\": 10,\n"
            "  \"chars_deleted\": 0,\n  \"chars_swapped\": 0,\n  \"chars_substituted\": 0,\n"
            "  \"chars_substitutable\": 0,\n  \"swap_positions\": 0\n}\n");
  StatReport s{3, 2, 1, {{"b", 1}, {"a", 2}}};
  EXPECT_EQ(stat_report_to_json(s),
            "{\n  \"total_pairs\": 3,\n  \"distinct_verses\": 2,\n  \"distinct_books\": 1,\n"
            "  \"per_version\": {\n    \"a\": 2,\n    \"b\": 1\n  }\n}\n");
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CorpusIo, FilesAndMissingPaths) {
  forge::testing::TempDir dir;
  write_file(dir / "a/b/c.txt", "hello");
  EXPECT_EQ(read_file(dir / "a/b/c.txt"), "hello");
  EXPECT_THROW(read_file(dir / "missing"), Error);
}
