// Copyright 2026 The Derivata Authors
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

#ifndef DERIVATA_SIMILARITY_HPP
#define DERIVATA_SIMILARITY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "derivata/corpus.hpp"
#include "derivata/errors.hpp"
#include "derivata/segmenter.hpp"
#include "derivata/tokenizer.hpp"

namespace derivata {

struct SimilarityParams {
  int k = 5;                 // fingerprint k-gram length in tokens
  int window = 4;            // winnowing window size
  int min_match_tokens = 8;  // shortest reported match

  void validate() const {
    if (k < 2) throw ConfigError("k must be >= 2");
    if (window < 1) throw ConfigError("window must be >= 1");
    if (min_match_tokens < k) throw ConfigError("min-match must be >= k");
  }
};

/// A shared run of tokens: article tokens [article_begin, article_begin+length)
/// equal thesis tokens [thesis_begin, thesis_begin+length) position by position.
struct MatchSpan {
  std::int32_t article_begin = 0;
  std::int32_t thesis_begin = 0;
  std::int32_t length = 0;

  std::int32_t article_end() const { return article_begin + length; }
  std::int32_t thesis_end() const { return thesis_begin + length; }

  friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

namespace detail {

inline std::uint64_t token_hash(const std::string& token) {
  // FNV-1a 64
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : token) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline constexpr std::uint64_t kGramBase = 0x9E3779B97F4A7C15ull;

// Polynomial rolling hash over per-token hashes: collisions are possible and
// are ruled out later by verifying token equality before extension.
inline std::vector<std::uint64_t> kgram_hashes(
    const std::vector<std::string>& tokens, int k) {
  std::vector<std::uint64_t> hashes;
  const std::size_t n = tokens.size();
  if (n < static_cast<std::size_t>(k)) return hashes;
  hashes.reserve(n - k + 1);

  std::uint64_t top_power = 1;  // kGramBase^(k-1)
  for (int i = 1; i < k; ++i) top_power *= kGramBase;

  std::vector<std::uint64_t> th(n);
  for (std::size_t i = 0; i < n; ++i) th[i] = token_hash(tokens[i]);

  std::uint64_t h = 0;
  for (int i = 0; i < k; ++i) h = h * kGramBase + th[i];
  hashes.push_back(h);
  for (std::size_t i = 1; i + k <= n; ++i) {
    h = (h - th[i - 1] * top_power) * kGramBase + th[i + k - 1];
    hashes.push_back(h);
  }
  return hashes;
}

// Winnowing: the minimum hash of each sliding window, rightmost on ties.
// Returns the selected k-gram start positions, deduplicated.
inline std::vector<std::int32_t> winnow(const std::vector<std::uint64_t>& hashes,
                                        int window) {
  std::vector<std::int32_t> selected;
  if (hashes.empty()) return selected;
  std::deque<std::int32_t> q;  // positions, hash values increasing
  std::int32_t last = -1;
  const std::int32_t n = static_cast<std::int32_t>(hashes.size());
  for (std::int32_t i = 0; i < n; ++i) {
    while (!q.empty() && hashes[q.back()] >= hashes[i]) q.pop_back();
    q.push_back(i);
    if (q.front() <= i - window) q.pop_front();
    if (i >= window - 1 && q.front() != last) {
      selected.push_back(q.front());
      last = q.front();
    }
  }
  if (n < window) {  // document shorter than one window: keep its minimum
    selected.push_back(q.front());
  }
  return selected;
}

}  // namespace detail

/// Winnowed fingerprint of one document. Any token run of length at least
/// k + window - 1 that the document shares with another is guaranteed to
/// share at least one selected fingerprint.
struct FingerprintIndex {
  std::string source_id;
  int k = 5;
  int window = 4;
  std::vector<std::string> tokens;  // the indexed document's token stream
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> entries;

  std::size_t fingerprint_count() const {
    std::size_t n = 0;
    for (const auto& [h, positions] : entries) n += positions.size();
    return n;
  }
};

inline FingerprintIndex build_index(const TokenStream& source, int k, int window,
                                    std::string source_id = {}) {
  if (k < 2) throw ConfigError("k must be >= 2");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (source.size() < static_cast<std::size_t>(k)) {
    throw IndexError("document too short to index: " +
                     std::to_string(source.size()) + " tokens, k=" +
                     std::to_string(k));
  }
  FingerprintIndex index;
  index.source_id = std::move(source_id);
  index.k = k;
  index.window = window;
  index.tokens = source.tokens;

  const std::vector<std::uint64_t> hashes = detail::kgram_hashes(index.tokens, k);
  for (std::int32_t pos : detail::winnow(hashes, window)) {
    index.entries[hashes[pos]].push_back(pos);
  }
  return index;
}

inline FingerprintIndex build_index(const Document& doc,
                                    const SimilarityParams& params) {
  params.validate();
  return build_index(tokenize(doc.text), params.k, params.window, doc.id);
}

/// All maximal shared runs of at least `min_match_tokens` tokens between
/// `section` and the indexed document, before article-side overlap merging.
/// Exposed for auditing and for the detection-guarantee tests.
inline std::vector<MatchSpan> find_maximal_runs(const TokenStream& section,
                                                const FingerprintIndex& index,
                                                int min_match_tokens) {
  std::vector<MatchSpan> runs;
  const std::int32_t k = index.k;
  const std::int32_t an = static_cast<std::int32_t>(section.size());
  const std::int32_t tn = static_cast<std::int32_t>(index.tokens.size());
  if (an < k) return runs;

  const std::vector<std::uint64_t> hashes = detail::kgram_hashes(section.tokens, k);

  // diagonal (a - t) -> article end of the last maximal run found on it;
  // seeds inside an already-extended run would rediscover it, so skip them.
  std::unordered_map<std::int64_t, std::int32_t> diagonal_end;

  for (std::int32_t a = 0; a + k <= an; ++a) {
    const auto it = index.entries.find(hashes[a]);
    if (it == index.entries.end()) continue;
    for (const std::int32_t t : it->second) {
      const std::int64_t diag =
          static_cast<std::int64_t>(a) - static_cast<std::int64_t>(t);
      const auto covered = diagonal_end.find(diag);
      if (covered != diagonal_end.end() && a < covered->second) continue;

      // Guard against hash collisions before extending.
      bool equal = true;
      for (std::int32_t j = 0; j < k && equal; ++j) {
        equal = section.tokens[a + j] == index.tokens[t + j];
      }
      if (!equal) continue;

      std::int32_t begin_a = a, begin_t = t;
      while (begin_a > 0 && begin_t > 0 &&
             section.tokens[begin_a - 1] == index.tokens[begin_t - 1]) {
        --begin_a;
        --begin_t;
      }
      std::int32_t end_a = a + k, end_t = t + k;
      while (end_a < an && end_t < tn &&
             section.tokens[end_a] == index.tokens[end_t]) {
        ++end_a;
        ++end_t;
      }
      diagonal_end[diag] = end_a;
      const std::int32_t length = end_a - begin_a;
      if (length >= min_match_tokens) {
        runs.push_back({begin_a, begin_t, length});
      }
    }
  }

  std::sort(runs.begin(), runs.end(), [](const MatchSpan& x, const MatchSpan& y) {
    return std::tie(x.article_begin, x.thesis_begin, x.length) <
           std::tie(y.article_begin, y.thesis_begin, y.length);
  });
  runs.erase(std::unique(runs.begin(), runs.end()), runs.end());
  return runs;
}

/// Matches one article section against the index and reports one span per
/// maximal merged match: runs overlapping on the article side collapse into
/// a single match, represented by the longest run among them.
inline std::vector<MatchSpan> match_section(const TokenStream& section,
                                            const FingerprintIndex& index,
                                            int min_match_tokens) {
  std::vector<MatchSpan> runs = find_maximal_runs(section, index, min_match_tokens);
  if (runs.empty()) return runs;

  // runs are sorted by article_begin; group overlapping article intervals.
  std::vector<MatchSpan> merged;
  std::size_t group_start = 0;
  std::int32_t group_end = runs[0].article_end();
  auto emit_group = [&](std::size_t begin, std::size_t end) {
    const MatchSpan* best = &runs[begin];
    for (std::size_t i = begin + 1; i < end; ++i) {
      if (runs[i].length > best->length) best = &runs[i];
    }
    merged.push_back(*best);
  };
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].article_begin < group_end) {
      group_end = std::max(group_end, runs[i].article_end());
    } else {
      emit_group(group_start, i);
      group_start = i;
      group_end = runs[i].article_end();
    }
  }
  emit_group(group_start, runs.size());
  return merged;
}

/// Per-section outcome of a comparison, kept for audit output.
struct SectionComparison {
  SectionLabel label;
  int token_count = 0;
  int covered_tokens = 0;
  std::vector<MatchSpan> spans;
};

struct ComparisonDetail {
  ComparisonRecord record;
  std::vector<SectionComparison> sections;
};

/// Compares every section of an article against an indexed thesis. Each
/// section is matched independently. The similarity index is the percentage
/// of article tokens covered by a match, computed over all sections except
/// References; the References match count is still reported.
inline ComparisonDetail compare_detailed(const SectionSet& article,
                                         const FingerprintIndex& index,
                                         const SimilarityParams& params) {
  params.validate();
  ComparisonDetail detail;
  detail.record.article_id = article.doc_id;
  detail.record.thesis_id = index.source_id;
  detail.record.section_present.fill(false);

  std::int64_t covered = 0;
  std::int64_t denominator = 0;
  for (const Section& section : article.sections) {
    SectionComparison sc;
    sc.label = section.label;
    const TokenStream tokens = tokenize(section.text);
    sc.token_count = static_cast<int>(tokens.size());
    sc.spans = match_section(tokens, index, params.min_match_tokens);
    for (const MatchSpan& span : sc.spans) sc.covered_tokens += span.length;

    detail.record.section_present[static_cast<int>(section.label)] = true;
    detail.record.section_matches[section.label] =
        static_cast<int>(sc.spans.size());
    if (section.label != SectionLabel::References) {
      covered += sc.covered_tokens;
      denominator += sc.token_count;
    }
    detail.sections.push_back(std::move(sc));
  }
  detail.record.total_matches = detail.record.section_matches.total();
  detail.record.similarity_index =
      denominator == 0
          ? 0.0
          : static_cast<double>(std::lround(100.0 * static_cast<double>(covered) /
                                            static_cast<double>(denominator)));
  return detail;
}

inline ComparisonRecord compare(const SectionSet& article, const Document& thesis,
                                const SimilarityParams& params = {}) {
  return compare_detailed(article, build_index(thesis, params), params).record;
}

}  // namespace derivata

#endif  // DERIVATA_SIMILARITY_HPP
