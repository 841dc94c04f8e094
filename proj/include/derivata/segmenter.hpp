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

#ifndef DERIVATA_SEGMENTER_HPP
#define DERIVATA_SEGMENTER_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "derivata/corpus.hpp"
#include "derivata/errors.hpp"
#include "derivata/sections.hpp"

namespace derivata {

/// One labeled section. `begin`/`end` are byte offsets into the source text
/// and `text` is exactly source.substr(begin, end - begin).
struct Section {
  SectionLabel label;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
};

/// The sections found in one document, ordered by start offset. Spans never
/// overlap; offsets not covered by any span are ignored gaps. Labels that
/// could not be located are listed in `missing`, never fabricated.
struct SectionSet {
  std::string doc_id;
  std::vector<Section> sections;
  std::vector<SectionLabel> missing;
  std::vector<std::string> flags;

  const Section* find(SectionLabel label) const {
    for (const Section& s : sections) {
      if (s.label == label) return &s;
    }
    return nullptr;
  }

  bool has_flag(std::string_view flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
  }
};

namespace detail {

struct HeadingAlias {
  std::string_view normalized;
  SectionLabel label;
  bool flag_combined;  // "results and discussion" headings get flagged
};

// Alias table for recognized heading lines, after case folding and
// numbering/punctuation stripping.
inline constexpr std::array<HeadingAlias, 14> kHeadingAliases = {{
    {"abstract", SectionLabel::Abstract, false},
    {"introduction", SectionLabel::Introduction, false},
    {"methods", SectionLabel::Methodology, false},
    {"methodology", SectionLabel::Methodology, false},
    {"materials and methods", SectionLabel::Methodology, false},
    {"patients and methods", SectionLabel::Methodology, false},
    {"subjects and methods", SectionLabel::Methodology, false},
    {"results", SectionLabel::Results, false},
    {"results and discussion", SectionLabel::Results, true},
    {"discussion", SectionLabel::Discussion, false},
    {"discussion and conclusions", SectionLabel::Discussion, false},
    {"references", SectionLabel::References, false},
    {"bibliography", SectionLabel::References, false},
    {"literature cited", SectionLabel::References, false},
}};

inline constexpr int kMaxHeadingTokens = 8;

// Lowercases ASCII, strips a leading numbering prefix ("3.", "2)", "1.2")
// and surrounding punctuation, and collapses runs of whitespace.
inline std::string normalize_heading(std::string_view line) {
  std::size_t b = 0;
  auto is_numbering = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == ')' ||
           c == '(' || c == '-' || c == ' ' || c == '\t';
  };
  std::size_t probe = b;
  bool saw_digit = false;
  while (probe < line.size() && is_numbering(line[probe])) {
    saw_digit = saw_digit || std::isdigit(static_cast<unsigned char>(line[probe]));
    ++probe;
  }
  if (saw_digit) b = probe;

  std::string out;
  bool pending_space = false;
  for (std::size_t i = b; i < line.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(line[i]);
    if (std::isalnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == ' ' || c == '\t' || c == '&') {
      pending_space = true;
      if (c == '&') {  // "Results & Discussion"
        if (!out.empty()) out += " and";
      }
    } else if (c == ':' || c == '.' || c == '\r') {
      // trailing punctuation on heading lines
      pending_space = true;
    } else {
      return {};  // any other character disqualifies the line as a heading
    }
  }
  return out;
}

inline int whitespace_token_count(std::string_view text) {
  int count = 0;
  bool in_token = false;
  for (char c : text) {
    const bool space = (c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                        c == '\f' || c == '\v');
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

inline const HeadingAlias* match_heading(std::string_view line) {
  if (whitespace_token_count(line) > kMaxHeadingTokens) return nullptr;
  const std::string normalized = normalize_heading(line);
  if (normalized.empty()) return nullptr;
  for (const HeadingAlias& alias : kHeadingAliases) {
    if (normalized == alias.normalized) return &alias;
  }
  return nullptr;
}

inline bool is_blank(std::string_view line) {
  return whitespace_token_count(line) == 0;
}

}  // namespace detail

/// Splits a document into its rhetorical sections. The first non-blank line
/// is the Title; every further section starts at a recognized heading line
/// and runs to the next recognized heading or end of text. A document with
/// no recognized heading past the title cannot enter section-level analysis.
inline SectionSet segment(const Document& doc) {
  const std::string& text = doc.text;
  SectionSet set;
  set.doc_id = doc.id;

  struct Line {
    std::size_t begin, end;  // [begin, end) excludes the newline
  };
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = (nl == std::string::npos) ? text.size() : nl;
    lines.push_back({pos, end});
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }

  std::size_t title_line = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!detail::is_blank(std::string_view(text).substr(
            lines[i].begin, lines[i].end - lines[i].begin))) {
      title_line = i;
      break;
    }
  }
  if (title_line == lines.size()) {
    throw SegmentationError("unstructured document " + doc.id + ": no content");
  }

  struct HeadingHit {
    std::size_t line;
    const detail::HeadingAlias* alias;
  };
  std::vector<HeadingHit> hits;
  bool abstract_heading_present = false;
  std::array<bool, kSectionCount> label_taken{};
  for (std::size_t i = title_line + 1; i < lines.size(); ++i) {
    const std::string_view line = std::string_view(text).substr(
        lines[i].begin, lines[i].end - lines[i].begin);
    const detail::HeadingAlias* alias = detail::match_heading(line);
    if (alias == nullptr) continue;
    if (label_taken[static_cast<int>(alias->label)]) {
      set.flags.push_back("duplicate-heading:" +
                          std::string(to_string(alias->label)));
      continue;
    }
    label_taken[static_cast<int>(alias->label)] = true;
    if (alias->label == SectionLabel::Abstract) abstract_heading_present = true;
    if (alias->flag_combined) set.flags.push_back("combined-results-discussion");
    hits.push_back({i, alias});
  }
  if (hits.empty()) {
    throw SegmentationError("unstructured document " + doc.id +
                            ": no recognized section heading");
  }

  auto push_section = [&](SectionLabel label, std::size_t begin, std::size_t end) {
    Section s;
    s.label = label;
    s.begin = begin;
    s.end = end;
    s.text = text.substr(begin, end - begin);
    set.sections.push_back(std::move(s));
  };

  push_section(SectionLabel::Title, lines[title_line].begin, lines[title_line].end);

  // Text between the title and the first heading becomes the Abstract when
  // no explicit Abstract heading exists anywhere; otherwise it is skipped.
  const std::size_t first_heading_begin = lines[hits.front().line].begin;
  std::size_t preamble_begin = lines[title_line].end;
  if (preamble_begin < text.size() && text[preamble_begin] == '\n') ++preamble_begin;
  if (preamble_begin < first_heading_begin) {
    const std::string_view gap = std::string_view(text).substr(
        preamble_begin, first_heading_begin - preamble_begin);
    if (!detail::is_blank(gap)) {
      if (!abstract_heading_present) {
        push_section(SectionLabel::Abstract, preamble_begin, first_heading_begin);
        label_taken[static_cast<int>(SectionLabel::Abstract)] = true;
      } else {
        set.flags.push_back("preamble-ignored");
      }
    }
  }

  // A section's span starts after its heading line; the heading itself is an
  // ignored gap, so an empty section stays representable.
  for (std::size_t h = 0; h < hits.size(); ++h) {
    std::size_t begin = lines[hits[h].line].end;
    if (begin < text.size() && text[begin] == '\n') ++begin;
    const std::size_t end =
        (h + 1 < hits.size()) ? lines[hits[h + 1].line].begin : text.size();
    push_section(hits[h].alias->label, begin, std::max(begin, end));
  }

  for (SectionLabel label : kAllSections) {
    if (set.find(label) == nullptr) set.missing.push_back(label);
  }
  return set;
}

/// Whitespace-delimited token count for every section that is present.
inline std::map<SectionLabel, int> section_word_counts(const SectionSet& set) {
  std::map<SectionLabel, int> counts;
  for (const Section& s : set.sections) {
    counts[s.label] = detail::whitespace_token_count(s.text);
  }
  return counts;
}

}  // namespace derivata

#endif  // DERIVATA_SEGMENTER_HPP
