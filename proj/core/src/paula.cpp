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


#include "corpusforge/paula.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "corpusforge/error.hpp"
#include "corpusforge/utf8.hpp"

namespace forge {
namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kAttr = "<xmlattr>";

[[noreturn]] void malformed(std::string_view doc, const std::string& what) {
  throw Error(ErrorCode::kMalformedXml, std::string(doc) + ": " + what);
}

std::optional<std::string> attribute(const pt::ptree& node, const std::string& name) {
  auto attrs = node.get_child_optional(pt::ptree::path_type(std::string(kAttr), '/'));
  if (!attrs) return std::nullopt;
  auto value = attrs->get_optional<std::string>(pt::ptree::path_type(name, '/'));
  if (!value) return std::nullopt;
  return *value;
}

bool is_meta(const std::string& key) {
  return key == kAttr || key == "<xmlcomment>";
}

struct PaulaFile {
  std::string paula_id;
  pt::ptree list;  // the single *List element
};

// Accepts <paula> with an optional <header> and exactly one list element.
PaulaFile read_paula(std::string_view xml, std::string_view list_name, std::string_view what) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    malformed(what, e.message() + " at line " + std::to_string(e.line()));
  }

  const pt::ptree* root = nullptr;
  for (const auto& [key, child] : tree) {
    if (key == "paula" && root == nullptr) {
      root = &child;
    } else if (!is_meta(key)) {
      malformed(what, "unexpected top-level element <" + key + ">");
    }
  }
  if (root == nullptr) malformed(what, "missing <paula> root");

  PaulaFile file;
  bool have_list = false;
  for (const auto& [key, child] : *root) {
    if (is_meta(key)) continue;
    if (key == "header") {
      file.paula_id = attribute(child, "paula_id").value_or("");
    } else if (key == list_name && !have_list) {
      file.list = child;
      have_list = true;
    } else {
      malformed(what, "unexpected element <" + key + "> under <paula>");
    }
  }
  if (!have_list) malformed(what, "missing <" + std::string(list_name) + ">");
  return file;
}

struct Reference {
  std::string first;
  std::string last;  // == first for a single id
};

std::string strip_hash(std::string_view what, std::string_view ref) {
  auto hash = ref.find('#');
  if (hash == std::string_view::npos || hash + 1 == ref.size()) {
    malformed(what, "bad reference '" + std::string(ref) + "'");
  }
  return std::string(ref.substr(hash + 1));
}

// "#t1", "file.xml#t1", "(#t1,#t2)" and
// "#xpointer(id('t1')/range-to(id('t5')))".
std::vector<Reference> parse_href(std::string_view what, std::string_view href) {
  std::string h = utf8::trim(href);
  std::string_view s = h;
  std::vector<Reference> out;
  if (s.empty()) malformed(what, "empty xlink:href");

  if (s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
    std::size_t start = 0;
    while (start <= s.size()) {
      auto comma = s.find(',', start);
      auto item = utf8::trim(s.substr(start, comma == std::string_view::npos ? comma : comma - start));
      auto id = strip_hash(what, item);
      out.push_back({id, id});
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }

  constexpr std::string_view kXp = "xpointer(";
  auto hash = s.find('#');
  if (hash != std::string_view::npos && s.substr(hash + 1).starts_with(kXp)) {
    std::string_view body = s.substr(hash + 1 + kXp.size());
    auto id_at = [&](std::string_view text, std::size_t from) -> std::pair<std::string, std::size_t> {
      auto open = text.find("id('", from);
      if (open == std::string_view::npos) malformed(what, "bad xpointer '" + h + "'");
      auto close = text.find("')", open + 4);
      if (close == std::string_view::npos) malformed(what, "bad xpointer '" + h + "'");
      return {std::string(text.substr(open + 4, close - open - 4)), close + 2};
    };
    auto [first, next] = id_at(body, 0);
    auto range = body.find("/range-to(", next);
    if (range == std::string_view::npos) {
      out.push_back({first, first});
    } else {
      auto [last, unused] = id_at(body, range);
      out.push_back({first, last});
    }
    return out;
  }

  auto id = strip_hash(what, s);
  out.push_back({id, id});
  return out;
}

struct Token {
  std::string text;
};

std::string header_or(std::string_view fallback, const PaulaFile& f) {
  return f.paula_id.empty() ? std::string(fallback) : f.paula_id;
}

}  // namespace

ParseResult parse_document_set(const PaulaDocumentSet& docs, const BookNameTable& books,
                               const ParseOptions& options) {
  const PaulaFile tok_file = read_paula(docs.tokens_xml, "tokenList", "token file");
  const PaulaFile mark_file = read_paula(docs.marks_xml, "markList", "mark file");
  // A zero-length feat file annotates nothing.
  const PaulaFile feat_file = utf8::trim(docs.feats_xml).empty()
                                  ? PaulaFile{}
                                  : read_paula(docs.feats_xml, "featList", "feat file");
  const std::string doc_id = docs.doc_id.empty() ? header_or("", tok_file) : docs.doc_id;

  // Tokens in document order.
  std::vector<Token> tokens;
  std::unordered_map<std::string, std::size_t> token_index;
  for (const auto& [key, node] : tok_file.list) {
    if (is_meta(key)) continue;
    if (key != "tok") malformed("token file", "unexpected element <" + key + ">");
    auto id = attribute(node, "id");
    if (!id || id->empty()) malformed("token file", "<tok> without id");
    std::string text = utf8::trim(node.data());
    if (text.empty()) malformed("token file", "token '" + *id + "' has no text");
    if (!token_index.emplace(*id, tokens.size()).second) {
      malformed("token file", "duplicate token id '" + *id + "'");
    }
    tokens.push_back({std::move(text)});
  }

  // Marks resolve lazily so a dangling mark only matters if a verse uses it.
  struct Mark {
    std::vector<Reference> refs;
  };
  std::unordered_map<std::string, Mark> marks;
  for (const auto& [key, node] : mark_file.list) {
    if (is_meta(key)) continue;
    if (key != "mark") malformed("mark file", "unexpected element <" + key + ">");
    auto id = attribute(node, "id");
    auto href = attribute(node, "xlink:href");
    if (!id || id->empty()) malformed("mark file", "<mark> without id");
    if (!href) malformed("mark file", "mark '" + *id + "' without xlink:href");
    if (!marks.emplace(*id, Mark{parse_href("mark file", *href)}).second) {
      malformed("mark file", "duplicate mark id '" + *id + "'");
    }
  }

  // Appends the token indices of one mark; returns an error string for a
  // dangling reference.
  auto resolve_mark = [&](const Mark& mark, std::vector<std::size_t>& out) -> std::string {
    for (const auto& ref : mark.refs) {
      auto a = token_index.find(ref.first);
      if (a == token_index.end()) return "token '" + ref.first + "' not found";
      auto b = token_index.find(ref.last);
      if (b == token_index.end()) return "token '" + ref.last + "' not found";
      if (b->second < a->second) {
        malformed("mark file", "inverted range " + ref.first + ".." + ref.last);
      }
      for (std::size_t i = a->second; i <= b->second; ++i) out.push_back(i);
    }
    return {};
  };

  ParseResult result;
  std::unordered_set<VerseId, VerseIdHash> seen;
  for (const auto& [key, node] : feat_file.list) {
    if (is_meta(key)) continue;
    if (key != "feat") malformed("feat file", "unexpected element <" + key + ">");
    auto href = attribute(node, "xlink:href");
    auto value = attribute(node, "value");
    if (!href) malformed("feat file", "<feat> without xlink:href");
    if (!value) malformed("feat file", "feat '" + *href + "' without value");

    auto skip_or_throw = [&](ErrorCode code, const std::string& why) {
      if (!options.lenient) throw Error(code, doc_id + ": " + why);
      result.skipped.push_back({doc_id, *href, *value, std::string(to_string(code)) + ": " + why});
    };

    std::vector<std::size_t> token_ids;
    std::string problem;
    for (const auto& ref : parse_href("feat file", *href)) {
      if (ref.first != ref.last) malformed("feat file", "feat may not reference a mark range");
      auto it = marks.find(ref.first);
      if (it == marks.end()) {
        problem = "mark '" + ref.first + "' not found";
        break;
      }
      problem = resolve_mark(it->second, token_ids);
      if (!problem.empty()) break;
    }
    if (!problem.empty()) {
      skip_or_throw(ErrorCode::kDanglingReference, problem);
      continue;
    }

    VerseId id;
    try {
      id = canonicalize_verse_id(*value, books);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnparseableReference) throw;
      skip_or_throw(e.code(), e.what());
      continue;
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateVerseId, doc_id + ": " + id.to_string());
    }

    VerseRecord record;
    record.id = std::move(id);
    record.source_doc = doc_id;
    record.token_count = static_cast<std::uint32_t>(token_ids.size());
    for (std::size_t i = 0; i < token_ids.size(); ++i) {
      if (i) record.text.push_back(' ');
      record.text += tokens[token_ids[i]].text;
    }
    result.records.push_back(std::move(record));
  }

  std::sort(result.records.begin(), result.records.end(),
            [](const VerseRecord& a, const VerseRecord& b) { return a.id < b.id; });
  return result;
}

std::vector<VerseRecord> parse_document_set(std::string_view tokens_xml,
                                            std::string_view marks_xml,
                                            std::string_view feats_xml,
                                            const BookNameTable& books) {
  PaulaDocumentSet docs{"", std::string(tokens_xml), std::string(marks_xml),
                        std::string(feats_xml)};
  return parse_document_set(docs, books).records;
}

std::vector<VerseRecord> merge_records(std::vector<std::vector<VerseRecord>> parts) {
  std::vector<VerseRecord> all;
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const VerseRecord& a, const VerseRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].id == all[i - 1].id) {
      throw Error(ErrorCode::kDuplicateVerseId,
                  all[i].id.to_string() + " in " + all[i - 1].source_doc + " and " +
                      all[i].source_doc);
    }
  }
  return all;
}

}  // namespace forge
