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
#include "corpusforge/error.hpp"
#include "corpusforge/paula.hpp"
#include "support.hpp"

using namespace forge;
using forge::testing::fixture;

namespace {

const char* kTokens = R"x(<paula><tokenList>
  <tok id="t1">ⲡⲁⲩⲗⲟⲥ</tok><tok id="t2">ⲡⲁⲡⲟⲥⲧⲟⲗⲟⲥ</tok>
</tokenList></paula>)x";
const char* kMarks = R"x(<paula><markList xmlns:xlink="http://www.w3.org/1999/xlink">
  <mark id="m1" xlink:href="#xpointer(id('t1')/range-to(id('t2')))"/>
</markList></paula>)x";
const char* kFeats = R"x(<paula><featList xmlns:xlink="http://www.w3.org/1999/xlink">
  <feat xlink:href="#m1" value="1Cor 1:1"/>
</featList></paula>)x";

PaulaDocumentSet demo() {
  return {"", read_file(fixture("paula/demo.tok.xml")), read_file(fixture("paula/demo.mark.xml")),
          read_file(fixture("paula/demo.feat.xml"))};
}

ErrorCode code_of(std::string_view tok, std::string_view mark, std::string_view feat) {
  try {
    parse_document_set(tok, mark, feat, BookNameTable::standard());
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIoError;
}

}  // namespace

TEST(Paula, SingleSpan) {
  auto records = parse_document_set(kTokens, kMarks, kFeats, BookNameTable::standard());
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].id.to_string(), "1Cor 1:1");
  EXPECT_EQ(records[0].text, "ⲡⲁⲩⲗⲟⲥ ⲡⲁⲡⲟⲥⲧⲟⲗⲟⲥ");
  EXPECT_EQ(records[0].token_count, 2u);
}

TEST(Paula, DemoDocumentSetSortedByCanon) {
  auto result = parse_document_set(demo(), BookNameTable::standard());
  ASSERT_EQ(result.records.size(), 6u);
  EXPECT_TRUE(result.skipped.empty());
  std::vector<std::string> ids;
  for (const auto& r : result.records) ids.push_back(r.id.to_string());
  EXPECT_EQ(ids, (std::vector<std::string>{"Gen 1:1", "Mark 1:1", "Mark 1:2", "Mark 1:3",
                                           "Rom 1:1", "1Cor 1:1"}));
  EXPECT_EQ(result.records[2].text, "ⲕⲁⲧⲁ ⲑⲉ");
  EXPECT_EQ(result.records[0].source_doc, "demo.tok");
  for (std::size_t i = 1; i < result.records.size(); ++i) {
    EXPECT_LT(result.records[i - 1].id, result.records[i].id);
  }
}

TEST(Paula, DanglingTokenReference) {
  std::string marks = kMarks;
  marks.replace(marks.find("'t2'"), 4, "'t9'");
  EXPECT_EQ(code_of(kTokens, marks, kFeats), ErrorCode::kDanglingReference);
}

TEST(Paula, DanglingMarkStrictVersusLenient) {
  auto docs = demo();
  docs.feats_xml = read_file(fixture("paula/ranges.feat.xml"));
  EXPECT_THROW(parse_document_set(docs, BookNameTable::standard()), Error);
  auto result = parse_document_set(docs, BookNameTable::standard(), ParseOptions{true});
  ASSERT_EQ(result.records.size(), 1u);
  EXPECT_EQ(result.records[0].id.to_string(), "1Cor 1:1");
  ASSERT_EQ(result.skipped.size(), 2u);
}

TEST(Paula, VerseRangeIsUnparseable) {
  std::string feats = kFeats;
  feats.replace(feats.find("1Cor 1:1"), 8, "1Cor 1:1-2");
  EXPECT_EQ(code_of(kTokens, kMarks, feats), ErrorCode::kUnparseableReference);
}

TEST(Paula, UnknownBook) {
  std::string feats = kFeats;
  feats.replace(feats.find("1Cor 1:1"), 8, "Enoch 1:1");
  EXPECT_EQ(code_of(kTokens, kMarks, feats), ErrorCode::kUnknownBook);
}

TEST(Paula, DuplicateVerse) {
  std::string feats = R"x(<paula><featList>
    <feat xlink:href="#m1" value="1Cor 1:1"/><feat xlink:href="#m1" value="1 Cor 1:1"/>
  </featList></paula>)x";
  EXPECT_EQ(code_of(kTokens, kMarks, feats), ErrorCode::kDuplicateVerseId);
}

TEST(Paula, MalformedXml) {
  EXPECT_EQ(code_of("<paula><tokenList>", kMarks, kFeats), ErrorCode::kMalformedXml);
  EXPECT_EQ(code_of("<other/>", kMarks, kFeats), ErrorCode::kMalformedXml);
  EXPECT_EQ(code_of(kTokens, kTokens, kFeats), ErrorCode::kMalformedXml);
}

TEST(Paula, MergeRejectsDuplicatesAcrossSets) {
  auto a = parse_document_set(kTokens, kMarks, kFeats, BookNameTable::standard());
  auto b = parse_document_set(demo(), BookNameTable::standard()).records;
  EXPECT_THROW(merge_records({a, b}), Error);
  b.erase(b.begin() + 5);
  auto merged = merge_records({a, b});
  ASSERT_EQ(merged.size(), 6u);
  EXPECT_EQ(merged.back().id.to_string(), "1Cor 1:1");
}

TEST(Paula, JsonlRoundTrip) {
  auto records = parse_document_set(demo(), BookNameTable::standard()).records;
  auto text = verse_records_to_jsonl(records);
  EXPECT_EQ(verse_records_from_jsonl(text, BookNameTable::standard()), records);
}
