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

#include "derivata/segmenter.hpp"
#include "derivata/tokenizer.hpp"
#include "oracles.hpp"

using namespace derivata;

namespace {

Document doc(const std::string& id, const std::string& text) {
  Document d;
  d.id = id;
  d.role = Role::Article;
  d.author_ids = {"a"};
  d.year = 2000;
  d.text = text;
  return d;
}

const std::string kCanonical =
    "Gene expression in tumor cells\n"
    "\n"
    "Abstract\n"
    "We measured gene expression.\n"
    "\n"
    "Introduction\n"
    "Tumors are heterogeneous.\n"
    "\n"
    "Methods\n"
    "We sequenced samples.\n"
    "\n"
    "Results\n"
    "Expression varied widely.\n"
    "\n"
    "Discussion\n"
    "The variance is biological.\n"
    "\n"
    "References\n"
    "1. Prior work.\n";

void check_span_invariants(const Document& d, const SectionSet& set) {
  for (std::size_t i = 0; i < set.sections.size(); ++i) {
    const Section& s = set.sections[i];
    REQUIRE(s.begin <= s.end);
    REQUIRE(s.end <= d.text.size());
    CHECK(s.text == d.text.substr(s.begin, s.end - s.begin));
    if (i > 0) CHECK(set.sections[i - 1].end <= s.begin);
  }
}

}  // namespace

TEST_CASE("canonical layout yields all seven sections") {
  const Document d = doc("canon", kCanonical);
  const SectionSet set = segment(d);

  CHECK(set.sections.size() == 7);
  CHECK(set.missing.empty());
  CHECK(set.find(SectionLabel::Title)->text == "Gene expression in tumor cells");
  CHECK(set.find(SectionLabel::Methodology) != nullptr);
  check_span_invariants(d, set);
}

TEST_CASE("heading aliases map to their sections") {
  const auto label_of = [](const std::string& heading) {
    const Document d = doc("alias", "Some title\n\n" + heading + "\ncontent\n");
    const SectionSet set = segment(d);
    REQUIRE(set.sections.size() >= 2);
    return set.sections.back().label;
  };
  CHECK(label_of("MATERIALS AND METHODS") == SectionLabel::Methodology);
  CHECK(label_of("Patients and Methods") == SectionLabel::Methodology);
  CHECK(label_of("methodology") == SectionLabel::Methodology);
  CHECK(label_of("Bibliography") == SectionLabel::References);
  CHECK(label_of("Literature Cited") == SectionLabel::References);
  CHECK(label_of("Discussion and Conclusions") == SectionLabel::Discussion);
  CHECK(label_of("3. Results") == SectionLabel::Results);
  CHECK(label_of("2) Introduction") == SectionLabel::Introduction);
  CHECK(label_of("DISCUSSION:") == SectionLabel::Discussion);
}

TEST_CASE("missing Discussion is reported, not fabricated") {
  const std::string text =
      "Title line\n\nAbstract\nabc\n\nIntroduction\ndef\n\nResults\nghi\n";
  const SectionSet set = segment(doc("nodisc", text));
  CHECK(set.find(SectionLabel::Discussion) == nullptr);
  CHECK(std::find(set.missing.begin(), set.missing.end(),
                  SectionLabel::Discussion) != set.missing.end());
}

TEST_CASE("document with no recognized heading raises SegmentationError") {
  CHECK_THROWS_AS(segment(doc("flat", "Just a title\nand prose with no headings\n")),
                  SegmentationError);
  CHECK_THROWS_AS(segment(doc("empty", "")), SegmentationError);
}

TEST_CASE("in-sentence section words are not headings") {
  const std::string text =
      "Title\n\nIntroduction\n"
      "The results were good. We wrote methods down.\n"
      "results of this kind need eight or more tokens to fool the scanner\n"
      "\nDiscussion\nfine\n";
  const SectionSet set = segment(doc("prose", text));
  CHECK(set.find(SectionLabel::Results) == nullptr);
  CHECK(set.find(SectionLabel::Methodology) == nullptr);
  const Section* intro = set.find(SectionLabel::Introduction);
  REQUIRE(intro != nullptr);
  CHECK(intro->text.find("results were good") != std::string::npos);
}

TEST_CASE("combined Results and Discussion maps to Results and is flagged") {
  const std::string text = "Title\n\nIntroduction\nabc\n\nResults and Discussion\nxyz\n";
  const SectionSet set = segment(doc("combined", text));
  CHECK(set.find(SectionLabel::Results) != nullptr);
  CHECK(set.has_flag("combined-results-discussion"));
  CHECK(set.find(SectionLabel::Discussion) == nullptr);
}

TEST_CASE("preamble becomes the Abstract when no Abstract heading exists") {
  const std::string text =
      "Title line\nThis leading paragraph acts as the abstract.\n\n"
      "Introduction\nbody\n";
  const SectionSet set = segment(doc("fallback", text));
  const Section* abstract = set.find(SectionLabel::Abstract);
  REQUIRE(abstract != nullptr);
  CHECK(abstract->text.find("leading paragraph") != std::string::npos);

  const std::string with_heading =
      "Title line\nstray preamble text\n\nAbstract\nreal abstract\n\n"
      "Introduction\nbody\n";
  const SectionSet set2 = segment(doc("explicit", with_heading));
  CHECK(set2.find(SectionLabel::Abstract)->text.find("real abstract") !=
        std::string::npos);
  CHECK(set2.has_flag("preamble-ignored"));
}

TEST_CASE("duplicate headings do not split sections twice") {
  const std::string text =
      "Title\n\nResults\nfirst results\n\nResults\nsecond block\n\nDiscussion\nd\n";
  const SectionSet set = segment(doc("dup", text));
  int results_count = 0;
  for (const Section& s : set.sections) {
    if (s.label == SectionLabel::Results) ++results_count;
  }
  CHECK(results_count == 1);
  CHECK(set.has_flag("duplicate-heading:Results"));
  // the second block stays inside the first Results span
  CHECK(set.find(SectionLabel::Results)->text.find("second block") !=
        std::string::npos);
}

TEST_CASE("segmentation is idempotent on reassembled text") {
  const Document d = doc("idem", kCanonical);
  const SectionSet a = segment(d);
  const SectionSet b = segment(doc("idem", d.text));
  REQUIRE(a.sections.size() == b.sections.size());
  for (std::size_t i = 0; i < a.sections.size(); ++i) {
    CHECK(a.sections[i].begin == b.sections[i].begin);
    CHECK(a.sections[i].end == b.sections[i].end);
  }
}

TEST_CASE("word counts per section") {
  const SectionSet set = segment(doc("wc", kCanonical));
  const std::map<SectionLabel, int> counts = section_word_counts(set);
  CHECK(counts.at(SectionLabel::Title) == 5);
  CHECK(counts.at(SectionLabel::Abstract) == 4);

  const SectionSet empty_abstract =
      segment(doc("ea", "Title\n\nAbstract\n\nIntroduction\nbody text\n"));
  CHECK(section_word_counts(empty_abstract).at(SectionLabel::Abstract) == 0);
}

TEST_CASE("trivial token counting") {
  CHECK(detail::whitespace_token_count("") == 0);
  CHECK(detail::whitespace_token_count("one two  three") == 3);
  CHECK(detail::whitespace_token_count("  \n\t ") == 0);
}

TEST_CASE("section word counts sum to whole-document count minus gaps") {
  const Document d = doc("sum", kCanonical);
  const SectionSet set = segment(d);

  int section_total = 0;
  for (const auto& [label, count] : section_word_counts(set)) {
    section_total += count;
  }
  int gap_total = 0;
  std::size_t cursor = 0;
  for (const Section& s : set.sections) {
    gap_total += oracles::whitespace_tokens(d.text.substr(cursor, s.begin - cursor));
    cursor = s.end;
  }
  gap_total += oracles::whitespace_tokens(d.text.substr(cursor));

  CHECK(section_total + gap_total == oracles::whitespace_tokens(d.text));
}

TEST_CASE("ten-document synthetic corpus: disjoint spans and reconstruction") {
  const std::vector<std::string> heading_variants = {
      "Methods", "METHODOLOGY", "Materials and Methods", "Patients and Methods",
      "Subjects and Methods", "3. Methods", "methods:", "METHODS", "Methodology",
      "2) Methods"};
  for (std::size_t i = 0; i < heading_variants.size(); ++i) {
    const std::string text = "Study " + std::to_string(i) +
                             "\n\nAbstract\nsummary here\n\nIntroduction\nwhy\n\n" +
                             heading_variants[i] +
                             "\nhow it was done\n\nResults\nwhat we saw\n\n"
                             "Discussion\nwhat it means\n\nReferences\nnone\n";
    const Document d = doc("synth" + std::to_string(i), text);
    const SectionSet set = segment(d);

    CHECK(set.find(SectionLabel::Methodology) != nullptr);
    CHECK(set.missing.empty());
    check_span_invariants(d, set);

    // Reconstruction: covered spans plus gaps give back the source.
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const Section& s : set.sections) {
      rebuilt += d.text.substr(cursor, s.begin - cursor);
      rebuilt += s.text;
      cursor = s.end;
    }
    rebuilt += d.text.substr(cursor);
    CHECK(rebuilt == d.text);
  }
}
