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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "derivata/similarity.hpp"
#include "derivata/tokenizer.hpp"
#include "oracles.hpp"

using namespace derivata;

namespace {

TokenStream stream_of(const std::vector<std::string>& tokens) {
  TokenStream s;
  s.tokens = tokens;
  std::size_t offset = 0;
  for (const std::string& t : tokens) {
    s.offsets.emplace_back(offset, offset + t.size());
    offset += t.size() + 1;
  }
  return s;
}

Document article_doc(const std::string& id, const std::string& text) {
  Document d;
  d.id = id;
  d.role = Role::Article;
  d.author_ids = {"a"};
  d.year = 2000;
  d.text = text;
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// tokenize
// ---------------------------------------------------------------------------

TEST_CASE("tokenize splits on punctuation and folds case") {
  const TokenStream s = tokenize("The CD4+ T-cells");
  CHECK(s.tokens == std::vector<std::string>{"the", "cd4", "t", "cells"});
}

TEST_CASE("tokenize of empty text is empty") {
  const TokenStream s = tokenize("");
  CHECK(s.tokens.empty());
  CHECK(s.offsets.empty());
}

TEST_CASE("tokenize keeps Latin-1 letters and folds them") {
  const TokenStream s = tokenize("Ana García-López Åström");
  CHECK(s.tokens == std::vector<std::string>{"ana", "garcía", "lópez",
                                             "åström"});
}

TEST_CASE("token offsets round-trip through fold_case") {
  std::mt19937 rng(11);
  const std::string chars = "abcXYZ 0-9,.éÉ()% \n\t";
  const std::vector<std::string> pieces = {
      "plain words", "CD4+", "École", "3.14", "a-b-c", "(x)", "%%", "  ",
      "MiXeD CaSe", "Øre"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    std::uniform_int_distribution<int> count(0, 8);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    const int parts = count(rng);
    for (int p = 0; p < parts; ++p) text += pieces[pick(rng)] + " ";

    const TokenStream s = tokenize(text);
    REQUIRE(s.tokens.size() == s.offsets.size());
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto [begin, end] = s.offsets[i];
      REQUIRE(begin < end);
      REQUIRE(end <= text.size());
      CHECK(fold_case(text.substr(begin, end - begin)) == s.tokens[i]);
      if (i > 0) CHECK(s.offsets[i - 1].second <= begin);
    }
  }
}

// ---------------------------------------------------------------------------
// build_index
// ---------------------------------------------------------------------------

TEST_CASE("window 1 keeps every k-gram") {
  const TokenStream ten = stream_of(
      {"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"});
  const FingerprintIndex index = build_index(ten, 5, 1);
  CHECK(index.fingerprint_count() == 6);
}

TEST_CASE("repeated text indexes a hash at multiple positions") {
  std::vector<std::string> tokens;
  for (int r = 0; r < 3; ++r) {
    for (const char* w : {"the", "same", "sentence", "again", "here"}) {
      tokens.push_back(w);
    }
  }
  const FingerprintIndex index = build_index(stream_of(tokens), 5, 1);
  bool any_multi = false;
  for (const auto& [hash, positions] : index.entries) {
    if (positions.size() > 1) any_multi = true;
  }
  CHECK(any_multi);
}

TEST_CASE("too-short input raises IndexError") {
  const TokenStream four = stream_of({"a", "b", "c", "d"});
  CHECK_THROWS_AS(build_index(four, 5, 4), IndexError);
}

TEST_CASE("invalid parameters are rejected") {
  const TokenStream ten = stream_of(
      {"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"});
  CHECK_THROWS_AS(build_index(ten, 1, 4), ConfigError);
  CHECK_THROWS_AS(build_index(ten, 5, 0), ConfigError);
  const SimilarityParams bad{.k = 5, .window = 4, .min_match_tokens = 3};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("winnowing guarantee on random token pairs") {
  // Any shared run of k + window - 1 or more tokens must be detected, and
  // nothing shorter than k may be reported: both bounds checked against the
  // brute-force run enumeration.
  const int k = 5, window = 4;
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::string> thesis = oracles::random_tokens(rng, 200, "t", 40);
    std::vector<std::string> article = oracles::random_tokens(rng, 200, "t", 40);

    // plant a guaranteed shared run
    std::uniform_int_distribution<int> len_dist(k + window - 1, 40);
    const int plant_len = len_dist(rng);
    std::uniform_int_distribution<int> tpos(0, 200 - plant_len);
    std::uniform_int_distribution<int> apos(0, 200 - plant_len);
    const int tp = tpos(rng), ap = apos(rng);
    for (int i = 0; i < plant_len; ++i) article[ap + i] = thesis[tp + i];

    const FingerprintIndex index = build_index(stream_of(thesis), k, window);
    const std::vector<MatchSpan> found =
        find_maximal_runs(stream_of(article), index, k);
    const std::vector<oracles::Run> truth =
        oracles::maximal_common_runs(article, thesis, k);

    // soundness: every reported run is a true maximal run
    for (const MatchSpan& span : found) {
      const oracles::Run as_run{span.article_begin, span.thesis_begin, span.length};
      CHECK(std::find(truth.begin(), truth.end(), as_run) != truth.end());
    }
    // detection: every true run long enough for the guarantee is reported
    for (const oracles::Run& run : truth) {
      if (run.length < k + window - 1) continue;
      const MatchSpan as_span{run.a_begin, run.b_begin, run.length};
      CHECK(std::find(found.begin(), found.end(), as_span) != found.end());
    }
  }
}

// ---------------------------------------------------------------------------
// match_section
// ---------------------------------------------------------------------------

TEST_CASE("verbatim paragraph is exactly one match span") {
  std::mt19937 rng(7);
  const std::vector<std::string> thesis =
      oracles::random_tokens(rng, 400, "w", 1000);
  const std::vector<std::string> paragraph(thesis.begin() + 100,
                                           thesis.begin() + 160);
  const FingerprintIndex index = build_index(stream_of(thesis), 5, 4);
  const std::vector<MatchSpan> spans = match_section(stream_of(paragraph), index, 8);

  REQUIRE(spans.size() == 1);
  CHECK(spans[0].article_begin == 0);
  CHECK(spans[0].length == 60);
  CHECK(spans[0].thesis_begin == 100);
}

TEST_CASE("disjoint vocabularies produce no matches") {
  std::mt19937 rng(8);
  const std::vector<std::string> thesis = oracles::random_tokens(rng, 300, "t", 50);
  const std::vector<std::string> other = oracles::random_tokens(rng, 300, "x", 50);
  const FingerprintIndex index = build_index(stream_of(thesis), 5, 4);
  CHECK(match_section(stream_of(other), index, 8).empty());
}

TEST_CASE("three planted excerpts are recovered as three spans") {
  std::mt19937 rng(9);
  const std::vector<std::string> thesis =
      oracles::random_tokens(rng, 2000, "t", 2000);
  std::vector<std::string> article = oracles::random_tokens(rng, 1000, "x", 2000);
  const int starts[3] = {100, 500, 900};  // article positions, disjoint
  const int sources[3] = {0, 700, 1500};
  for (int p = 0; p < 3; ++p) {
    for (int i = 0; i < 40; ++i) {
      article[starts[p] + i] = thesis[sources[p] + i];
    }
  }

  const FingerprintIndex index = build_index(stream_of(thesis), 5, 4);
  const std::vector<MatchSpan> spans = match_section(stream_of(article), index, 8);

  REQUIRE(spans.size() == 3);
  int covered = 0;
  for (const MatchSpan& span : spans) covered += span.length;
  CHECK(covered >= 120 - 5);
  CHECK(covered <= 120 + 5);

  // oracle agreement: the spans are exactly the >= 8-token maximal runs
  const std::vector<oracles::Run> truth =
      oracles::maximal_common_runs(article, thesis, 8);
  REQUIRE(truth.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(spans[i].article_begin == truth[i].a_begin);
    CHECK(spans[i].thesis_begin == truth[i].b_begin);
    CHECK(spans[i].length == truth[i].length);
  }
}

TEST_CASE("span soundness: article tokens equal thesis tokens position-wise") {
  std::mt19937 rng(10);
  const std::vector<std::string> thesis = oracles::random_tokens(rng, 500, "t", 30);
  const std::vector<std::string> article = oracles::random_tokens(rng, 500, "t", 30);
  const FingerprintIndex index = build_index(stream_of(thesis), 5, 4);
  for (const MatchSpan& span : match_section(stream_of(article), index, 8)) {
    for (int i = 0; i < span.length; ++i) {
      REQUIRE(article[span.article_begin + i] == thesis[span.thesis_begin + i]);
    }
  }
}

TEST_CASE("overlapping detections merge into one reported match") {
  // the same article phrase occurs twice in the thesis: one span, not two
  std::mt19937 rng(21);
  std::vector<std::string> thesis = oracles::random_tokens(rng, 100, "t", 500);
  std::vector<std::string> phrase(thesis.begin() + 10, thesis.begin() + 30);
  thesis.insert(thesis.end(), phrase.begin(), phrase.end());

  const FingerprintIndex index = build_index(stream_of(thesis), 5, 4);
  const std::vector<MatchSpan> spans = match_section(stream_of(phrase), index, 8);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].length == 20);
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

namespace {

// Builds an article whose sections are slices of the thesis token stream.
std::string sectioned_text(const std::vector<std::vector<std::string>>& bodies) {
  const char* headings[] = {"Abstract", "Introduction", "Methods",
                            "Results",  "Discussion",   "References"};
  std::string text = "Article title line\n";
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    text += "\n";
    text += headings[i];
    text += "\n";
    text += oracles::join(bodies[i]);
    text += "\n";
  }
  return text;
}

}  // namespace

TEST_CASE("verbatim thesis chapters score 100 with one match per section") {
  std::mt19937 rng(31);
  const std::vector<std::string> words =
      oracles::random_tokens(rng, 1200, "w", 5000);
  Document thesis;
  thesis.id = "T";
  thesis.role = Role::Thesis;
  thesis.author_ids = {"a"};
  thesis.year = 2000;
  thesis.text = "Thesis title\n\nIntroduction\n" + oracles::join(words) + "\n";

  std::vector<std::vector<std::string>> bodies;
  for (int s = 0; s < 6; ++s) {
    bodies.emplace_back(words.begin() + s * 200, words.begin() + (s + 1) * 200);
  }
  const Document article = article_doc("A", sectioned_text(bodies));

  const SimilarityParams params;
  const ComparisonRecord rec = compare(segment(article), thesis, params);
  CHECK(rec.similarity_index == 100.0);
  for (SectionLabel label :
       {SectionLabel::Abstract, SectionLabel::Introduction,
        SectionLabel::Methodology, SectionLabel::Results,
        SectionLabel::Discussion, SectionLabel::References}) {
    CHECK(rec.section_matches[label] == 1);
  }
  CHECK(rec.total_matches == rec.section_matches.total());
}

TEST_CASE("disjoint article scores zero everywhere") {
  std::mt19937 rng(32);
  Document thesis;
  thesis.id = "T";
  thesis.role = Role::Thesis;
  thesis.author_ids = {"a"};
  thesis.year = 2000;
  thesis.text = "Thesis title\n\nIntroduction\n" +
                oracles::join(oracles::random_tokens(rng, 800, "t", 400)) + "\n";

  std::vector<std::vector<std::string>> bodies;
  for (int s = 0; s < 6; ++s) {
    bodies.push_back(oracles::random_tokens(rng, 100, "x", 400));
  }
  const Document article = article_doc("A", sectioned_text(bodies));
  const ComparisonRecord rec = compare(segment(article), thesis, {});

  CHECK(rec.similarity_index == 0.0);
  CHECK(rec.total_matches == 0);
  CHECK(rec.section_matches.total() == 0);
}

TEST_CASE("planted fraction is recovered within two points") {
  std::mt19937 rng(33);
  const std::vector<std::string> thesis_words =
      oracles::random_tokens(rng, 3000, "t", 3000);
  Document thesis;
  thesis.id = "T";
  thesis.role = Role::Thesis;
  thesis.author_ids = {"a"};
  thesis.year = 2000;
  thesis.text = "Thesis title\n\nIntroduction\n" + oracles::join(thesis_words) + "\n";
  const FingerprintIndex index = build_index(thesis, {});

  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::string> body = oracles::random_tokens(rng, 900, "x", 3000);
    // plant 10%: one 90-token excerpt
    std::uniform_int_distribution<int> src(0, 3000 - 90);
    std::uniform_int_distribution<int> dst(0, 900 - 90);
    const int s = src(rng), d = dst(rng);
    for (int i = 0; i < 90; ++i) body[d + i] = thesis_words[s + i];

    const Document article =
        article_doc("A", "Title\n\nIntroduction\n" + oracles::join(body) + "\n");
    const ComparisonDetail detail =
        compare_detailed(segment(article), index, {});
    CHECK(detail.record.similarity_index >= 8.0);
    CHECK(detail.record.similarity_index <= 12.0);
  }
}

TEST_CASE("comparison is deterministic") {
  std::mt19937 rng(34);
  Document thesis;
  thesis.id = "T";
  thesis.role = Role::Thesis;
  thesis.author_ids = {"a"};
  thesis.year = 2000;
  thesis.text = "Thesis\n\nIntroduction\n" +
                oracles::join(oracles::random_tokens(rng, 600, "t", 100)) + "\n";
  const Document article = article_doc(
      "A", "Title\n\nIntroduction\n" +
               oracles::join(oracles::random_tokens(rng, 300, "t", 100)) + "\n");

  const ComparisonRecord a = compare(segment(article), thesis, {});
  const ComparisonRecord b = compare(segment(article), thesis, {});
  CHECK(a == b);
}

TEST_CASE("appending copied text never lowers similarity or matches") {
  std::mt19937 rng(35);
  const std::vector<std::string> thesis_words =
      oracles::random_tokens(rng, 1000, "t", 800);
  Document thesis;
  thesis.id = "T";
  thesis.role = Role::Thesis;
  thesis.author_ids = {"a"};
  thesis.year = 2000;
  thesis.text = "Thesis\n\nIntroduction\n" + oracles::join(thesis_words) + "\n";

  std::vector<std::string> body = oracles::random_tokens(rng, 300, "x", 800);
  const std::string base_text =
      "Title\n\nIntroduction\n" + oracles::join(body) + "\n";
  const ComparisonRecord before = compare(segment(article_doc("A", base_text)),
                                          thesis, {});

  const std::vector<std::string> copied(thesis_words.begin() + 200,
                                        thesis_words.begin() + 260);
  const std::string appended_text =
      base_text + " " + oracles::join(copied) + "\n";
  const ComparisonRecord after =
      compare(segment(article_doc("A", appended_text)), thesis, {});

  CHECK(after.similarity_index >= before.similarity_index);
  CHECK(after.total_matches >= before.total_matches);
}

TEST_CASE("references are counted but excluded from the similarity index") {
  std::mt19937 rng(36);
  const std::vector<std::string> thesis_words =
      oracles::random_tokens(rng, 500, "t", 2000);
  Document thesis;
  thesis.id = "T";
  thesis.role = Role::Thesis;
  thesis.author_ids = {"a"};
  thesis.year = 2000;
  thesis.text = "Thesis\n\nIntroduction\n" + oracles::join(thesis_words) + "\n";

  // references section copied from the thesis, body disjoint
  std::vector<std::string> refs(thesis_words.begin(), thesis_words.begin() + 60);
  const std::string text = "Title\n\nIntroduction\n" +
                           oracles::join(oracles::random_tokens(rng, 200, "x", 50)) +
                           "\n\nReferences\n" + oracles::join(refs) + "\n";
  const ComparisonRecord rec = compare(segment(article_doc("A", text)), thesis, {});

  CHECK(rec.section_matches[SectionLabel::References] == 1);
  CHECK(rec.similarity_index == 0.0);
  CHECK(rec.total_matches == 1);
}

TEST_CASE("self comparison of a sectioned thesis scores at least 98") {
  std::mt19937 rng(37);
  std::string text = "Self study of everything\n";
  const char* headings[] = {"Abstract", "Introduction", "Methods",
                            "Results",  "Discussion",   "References"};
  for (const char* h : headings) {
    text += "\n";
    text += h;
    text += "\n";
    text += oracles::join(oracles::random_tokens(rng, 300, "s", 1500));
    text += "\n";
  }
  Document thesis;
  thesis.id = "T";
  thesis.role = Role::Thesis;
  thesis.author_ids = {"a"};
  thesis.year = 2000;
  thesis.text = text;

  const ComparisonRecord rec = compare(segment(thesis), thesis, {});
  CHECK(rec.similarity_index >= 98.0);
}
