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


#include "corpusforge/meteor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

#include <unicode/uchar.h>

#include "corpusforge/error.hpp"
#include "corpusforge/utf8.hpp"

namespace forge {
namespace {

// Exact search gives up after this many expanded states.
constexpr std::size_t kSearchBudget = 1u << 16;
constexpr std::size_t kMaxExactMatches = 32;

bool is_punct(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

struct Problem {
  std::vector<int> hyp;  // type ids
  std::vector<int> ref;
  std::vector<int> hyp_count;
  std::vector<int> ref_count;
  std::size_t matches = 0;
};

Problem intern(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  Problem p;
  std::unordered_map<std::string, int> ids;
  auto id_of = [&](const std::string& s) {
    auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
    if (inserted) {
      p.hyp_count.push_back(0);
      p.ref_count.push_back(0);
    }
    return it->second;
  };
  for (const auto& t : hyp) p.hyp.push_back(id_of(t));
  for (const auto& t : ref) p.ref.push_back(id_of(t));
  for (int t : p.hyp) ++p.hyp_count[t];
  for (int t : p.ref) ++p.ref_count[t];
  for (std::size_t w = 0; w < p.hyp_count.size(); ++w) {
    p.matches += static_cast<std::size_t>(std::min(p.hyp_count[w], p.ref_count[w]));
  }
  return p;
}

// Longest run of equal tokens starting at hyp[i] / ref[j] over unused refs.
std::size_t run_length(const Problem& p, const std::vector<bool>& used, std::size_t i,
                       std::size_t j) {
  std::size_t k = 0;
  while (i + k < p.hyp.size() && j + k < p.ref.size() && !used[j + k] &&
         p.hyp[i + k] == p.ref[j + k]) {
    ++k;
  }
  return k;
}

// Matches every hypothesis token it can, preferring to extend the current
// chunk and otherwise the longest available run (leftmost on ties).
std::size_t greedy_links(const Problem& p) {
  std::vector<bool> used(p.ref.size(), false);
  std::size_t links = 0;
  long prev = -1;
  for (std::size_t i = 0; i < p.hyp.size(); ++i) {
    const int w = p.hyp[i];
    long chosen = -1;
    if (prev >= 0 && static_cast<std::size_t>(prev + 1) < p.ref.size() &&
        !used[prev + 1] && p.ref[prev + 1] == w) {
      chosen = prev + 1;
    } else {
      std::size_t best = 0;
      for (std::size_t j = 0; j < p.ref.size(); ++j) {
        if (used[j] || p.ref[j] != w) continue;
        std::size_t len = run_length(p, used, i, j);
        if (len > best) {
          best = len;
          chosen = static_cast<long>(j);
        }
      }
    }
    if (chosen < 0) {
      prev = -1;
      continue;
    }
    used[chosen] = true;
    if (prev >= 0 && chosen == prev + 1) ++links;
    prev = chosen;
  }
  return links;
}

// Branch and bound over (hyp position, used candidate refs, previous match)
// maximizing the number of adjacent links among maximum matchings. Memo
// entries are either exact values or upper bounds from a cut-off search.
class ExactSearch {
 public:
  explicit ExactSearch(const Problem& p) : p_(p) {
    for (std::size_t j = 0; j < p.ref.size(); ++j) {
      if (p.hyp_count[p.ref[j]] > 0) candidates_.push_back(j);
    }
    type_mask_.assign(p.hyp_count.size(), 0);
    candidate_bit_.assign(p.ref.size(), 0);
    for (std::size_t b = 0; b < candidates_.size() && b < 64; ++b) {
      type_mask_[p.ref[candidates_[b]]] |= std::uint64_t{1} << b;
      candidate_bit_[candidates_[b]] = static_cast<int>(b);
    }
    seen_before_.assign(p.hyp.size(), 0);
    std::vector<int> seen(p.hyp_count.size(), 0);
    for (std::size_t i = 0; i < p.hyp.size(); ++i) {
      seen_before_[i] = seen[p.hyp[i]]++;
    }

    // Reference bigrams (j-1, j) over candidate slots, interned by type pair.
    // suffix_[k][id]: occurrences of bigram id ending at hyp positions >= k.
    std::map<std::pair<int, int>, int> ids;
    for (std::size_t j = 1; j < p.ref.size(); ++j) {
      if (p.hyp_count[p.ref[j - 1]] == 0 || p.hyp_count[p.ref[j]] == 0) continue;
      auto [it, inserted] = ids.emplace(std::pair{p.ref[j - 1], p.ref[j]}, static_cast<int>(ids.size()));
      ref_bigrams_.push_back({candidate_bit_[j - 1], candidate_bit_[j], it->second});
    }
    bigram_types_ = ids.size();
    suffix_.assign((p.hyp.size() + 1) * bigram_types_, 0);
    for (std::size_t k = p.hyp.size(); k-- > 1;) {
      std::copy_n(&suffix_[(k + 1) * bigram_types_], bigram_types_, &suffix_[k * bigram_types_]);
      if (auto it = ids.find({p.hyp[k - 1], p.hyp[k]}); it != ids.end()) {
        ++suffix_[k * bigram_types_ + it->second];
      }
    }
    avail_.resize(bigram_types_);
  }

  bool feasible() const { return candidates_.size() <= 64; }

  // links holds a feasible lower bound on entry. Returns false when the
  // budget ran out before optimality was settled.
  bool run(std::size_t& links) {
    aborted_ = false;
    const int floor = static_cast<int>(links);
    int best = solve(0, 0, -1, floor + 1);
    if (aborted_) return false;
    if (best > floor) links = static_cast<std::size_t>(best);
    return true;
  }

 private:
  struct Key {
    std::uint64_t mask;
    std::uint64_t pos;  // (i << 32) | (prev + 1)
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.mask * 0x9E3779B97F4A7C15ULL ^ k.pos);
    }
  };
  struct Entry {
    int value;
    bool exact;
  };

  // Upper bound on links into hyp positions >= k: each needs a reference
  // bigram with both slots still free.
  int future_links(std::size_t k, std::uint64_t mask) {
    if (bigram_types_ == 0 || k >= p_.hyp.size()) return 0;
    std::fill(avail_.begin(), avail_.end(), 0);
    for (const auto& b : ref_bigrams_) {
      if (!((mask >> b.first_bit) & 1u) && !((mask >> b.second_bit) & 1u)) ++avail_[b.id];
    }
    const int* want = &suffix_[k * bigram_types_];
    int total = 0;
    for (std::size_t id = 0; id < bigram_types_; ++id) total += std::min(want[id], avail_[id]);
    return total;
  }

  // Exact value when it is >= need, otherwise an upper bound below need.
  int solve(std::size_t i, std::uint64_t mask, long prev, int need) {
    if (aborted_) return 0;
    if (i == p_.hyp.size()) return 0;
    const int w = p_.hyp[i];
    if (prev >= 0) {
      // prev only matters if the next ref slot can still take this token
      const auto next = static_cast<std::size_t>(prev + 1);
      if (next >= p_.ref.size() || p_.ref[next] != w || (mask >> candidate_bit_[next]) & 1u) {
        prev = -1;
      }
    }
    const int bound = (prev >= 0 ? 1 : 0) + future_links(i + 1, mask);
    if (bound < need) return bound;

    Key key{mask, (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(prev + 1)};
    auto it = memo_.find(key);
    if (it != memo_.end() && (it->second.exact || it->second.value < need)) return it->second.value;
    if (++expanded_ > kSearchBudget) {
      aborted_ = true;
      return 0;
    }

    const int used = std::popcount(mask & type_mask_[w]);
    const int skipped = seen_before_[i] - used;
    const int may_skip = std::max(0, p_.hyp_count[w] - p_.ref_count[w]);

    int best = -1;
    auto consider = [&](int link, std::uint64_t next_mask, long j) {
      const int child_need = std::max(need, best + 1) - link;
      best = std::max(best, link + solve(i + 1, next_mask, j, std::max(child_need, 0)));
    };
    if (used < p_.ref_count[w]) {
      if (prev >= 0) {
        const auto j = static_cast<std::size_t>(prev + 1);
        consider(1, mask | (std::uint64_t{1} << candidate_bit_[j]), static_cast<long>(j));
      }
      std::uint64_t free = type_mask_[w] & ~mask;
      while (free && best < bound) {
        const int b = std::countr_zero(free);
        free &= free - 1;
        const long j = static_cast<long>(candidates_[b]);
        if (prev >= 0 && j == prev + 1) continue;
        consider(0, mask | (std::uint64_t{1} << b), j);
      }
    }
    if ((skipped < may_skip || used == p_.ref_count[w]) && best < bound) consider(0, mask, -1);
    if (aborted_) return 0;

    const bool exact = best >= need;
    if (it != memo_.end()) {
      it->second = {best, exact};
    } else {
      memo_.emplace(key, Entry{best, exact});
    }
    return best;
  }

  const Problem& p_;
  std::vector<std::size_t> candidates_;
  std::vector<std::uint64_t> type_mask_;
  std::vector<int> candidate_bit_;
  std::vector<int> seen_before_;
  struct RefBigram {
    int first_bit;
    int second_bit;
    int id;
  };
  std::vector<RefBigram> ref_bigrams_;
  std::size_t bigram_types_ = 0;
  std::vector<int> suffix_;
  std::vector<int> avail_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
  std::size_t expanded_ = 0;
  bool aborted_ = false;
};

}  // namespace

void MeteorParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be in (0, 1)");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be in [0, 1]");
  if (!(beta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "beta must be positive");
  if (stages.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one stage is required");
  if (stages.size() == 2 && stages[0] == stages[1]) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate stage");
  }
  if (stages.size() > 2) throw Error(ErrorCode::kInvalidArgument, "too many stages");
}

bool MeteorParams::folds_case() const {
  return std::find(stages.begin(), stages.end(), MatchStage::kLowercase) != stages.end();
}

std::vector<std::string> meteor_tokenize(std::string_view text, const MeteorParams& params) {
  const bool fold = params.folds_case();
  std::vector<std::string> tokens;
  std::u32string cps = utf8::decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && utf8::is_space(cps[i])) ++i;
    std::size_t start = i;
    while (i < cps.size() && !utf8::is_space(cps[i])) ++i;
    std::size_t end = i;
    while (start < end && is_punct(cps[start])) ++start;
    while (end > start && is_punct(cps[end - 1])) --end;
    if (start == end) continue;
    std::u32string tok = cps.substr(start, end - start);
    if (fold) {
      for (auto& c : tok) c = static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
    }
    tokens.push_back(utf8::encode(tok));
  }
  return tokens;
}

MeteorAlignment meteor_align(const std::vector<std::string>& hyp,
                             const std::vector<std::string>& ref) {
  const Problem p = intern(hyp, ref);
  MeteorAlignment a;
  a.matches = p.matches;
  if (p.matches == 0) return a;

  std::size_t links = greedy_links(p);
  bool exact = false;
  if (p.matches <= kMaxExactMatches) {
    ExactSearch search(p);
    if (search.feasible()) exact = search.run(links);
  }
  a.chunks = p.matches - links;
  a.exact = exact;
  return a;
}

MeteorStats meteor_stats(std::string_view hypothesis, std::string_view reference,
                         const MeteorParams& params) {
  params.validate();
  MeteorStats s;
  auto hyp = meteor_tokenize(hypothesis, params);
  auto ref = meteor_tokenize(reference, params);
  s.hyp_len = hyp.size();
  s.ref_len = ref.size();
  s.alignment = meteor_align(hyp, ref);
  const double m = static_cast<double>(s.alignment.matches);
  if (s.alignment.matches == 0) return s;
  s.precision = m / static_cast<double>(s.hyp_len);
  s.recall = m / static_cast<double>(s.ref_len);
  s.fmean = s.precision * s.recall /
            (params.alpha * s.precision + (1.0 - params.alpha) * s.recall);
  s.penalty = params.gamma * std::pow(static_cast<double>(s.alignment.chunks) / m, params.beta);
  s.score = s.fmean * (1.0 - s.penalty);
  return s;
}

double meteor(std::string_view hypothesis, std::string_view reference, const MeteorParams& params) {
  return meteor_stats(hypothesis, reference, params).score;
}

namespace {

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

double pairwise_mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return pairwise_sum(values.data(), values.size()) / static_cast<double>(values.size());
}

MetricReport evaluate_corpus(const std::vector<Hypothesis>& hypotheses,
                             const std::vector<AlignedPair>& references,
                             const MeteorParams& params, unsigned threads) {
  params.validate();
  std::map<std::pair<VerseId, std::string>, const std::string*> lookup;
  for (const auto& r : references) lookup.emplace(std::make_pair(r.id, r.version), &r.reference_text);

  std::vector<const std::string*> refs(hypotheses.size());
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    auto it = lookup.find({hypotheses[i].id, hypotheses[i].version});
    if (it == lookup.end()) {
      throw Error(ErrorCode::kMissingReference,
                  hypotheses[i].id.to_string() + " (" + hypotheses[i].version + ")");
    }
    refs[i] = it->second;
  }

  std::vector<double> scores(hypotheses.size());
  const std::size_t workers = std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1,
                                                      std::max<std::size_t>(hypotheses.size(), 1));
  auto run = [&](std::size_t w) {
    const std::size_t begin = hypotheses.size() * w / workers;
    const std::size_t end = hypotheses.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) scores[i] = meteor(hypotheses[i].text, *refs[i], params);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  MetricReport report;
  report.per_verse.reserve(hypotheses.size());
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    report.per_verse.push_back({hypotheses[i].id, hypotheses[i].version, scores[i]});
  }
  report.corpus_mean = pairwise_mean(scores);
  return report;
}

}  // namespace forge
