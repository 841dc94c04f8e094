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

#ifndef DERIVATA_CORPUS_HPP
#define DERIVATA_CORPUS_HPP

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "derivata/errors.hpp"
#include "derivata/sections.hpp"

namespace derivata {

enum class Role { Thesis, Article };

/// A full-text document with its byline. A corpus is immutable after load
/// and safe for concurrent reads.
struct Document {
  std::string id;
  Role role = Role::Article;
  std::vector<std::string> author_ids;  // byline order
  int year = 0;                         // calendar year
  std::string text;                     // UTF-8 full text

  friend bool operator==(const Document&, const Document&) = default;
};

/// Thesis-side metadata: who wrote it, who supervised it, and which articles
/// the user designates as its reference ("gold") set.
struct ThesisRecord {
  std::string thesis_id;
  std::string candidate_author_id;
  std::set<std::string> supervisor_ids;
  int completion_year = 0;
  std::set<std::string> gold_article_ids;

  friend bool operator==(const ThesisRecord&, const ThesisRecord&) = default;
};

/// 1-based rank of the thesis author in an article byline of size `byline_size`.
struct AuthorPosition {
  int rank = 1;
  int byline_size = 1;

  friend bool operator==(const AuthorPosition&, const AuthorPosition&) = default;
};

/// How many of the thesis's supervisors appear as coauthors.
struct SupervisorOverlap {
  int coauthoring = 0;
  int total = 0;

  friend bool operator==(const SupervisorOverlap&, const SupervisorOverlap&) = default;
};

/// One article-versus-thesis measurement row. `total_matches` equals the sum
/// of the seven per-section counts; a section that was absent from the
/// article contributes zero and is marked in `section_present`.
struct ComparisonRecord {
  std::string article_id;
  std::string thesis_id;
  double similarity_index = 0.0;  // percent in [0, 100]
  SectionCounts section_matches;
  int total_matches = 0;
  AuthorPosition author_position;
  SupervisorOverlap supervisor_overlap;
  std::optional<int> year_offset;  // article year minus completion year
  std::array<bool, kSectionCount> section_present = {true, true, true, true,
                                                     true, true, true};

  bool has_section(SectionLabel label) const {
    return section_present[static_cast<int>(label)];
  }

  friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

struct Corpus {
  std::vector<Document> documents;  // theses first, then articles, input order
  std::vector<ThesisRecord> theses;
  std::map<std::string, std::string> article_thesis;  // article id -> thesis id

  const Document* find(const std::string& id) const {
    for (const Document& d : documents) {
      if (d.id == id) return &d;
    }
    return nullptr;
  }

  const ThesisRecord* find_thesis(const std::string& thesis_id) const {
    for (const ThesisRecord& t : theses) {
      if (t.thesis_id == thesis_id) return &t;
    }
    return nullptr;
  }

  std::vector<const Document*> articles() const {
    std::vector<const Document*> out;
    for (const Document& d : documents) {
      if (d.role == Role::Article) out.push_back(&d);
    }
    return out;
  }

  std::size_t thesis_count() const { return theses.size(); }
  std::size_t article_count() const { return article_thesis.size(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

namespace detail {

inline std::string read_text_file(const std::filesystem::path& path,
                                  const std::string& doc_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestError("cannot read text file for document " + doc_id + ": " +
                      path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

/// Loads a corpus from a manifest JSON file. Text files are resolved
/// relative to the manifest's directory. Validates id uniqueness, thesis
/// references, byline membership of the thesis author, and gold ids.
inline Corpus load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw IngestError("cannot open manifest: " + manifest_path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError("malformed manifest " + manifest_path.string() + ": " +
                      e.what());
  }

  const std::filesystem::path base = manifest_path.parent_path();
  Corpus corpus;
  std::set<std::string> seen_ids;

  auto claim_id = [&seen_ids](const std::string& id) {
    if (id.empty()) throw IngestError("empty document id in manifest");
    if (!seen_ids.insert(id).second) throw DuplicateIdError(id);
  };

  try {
    for (const auto& t : doc.value("theses", nlohmann::json::array())) {
      ThesisRecord rec;
      rec.thesis_id = t.at("id").get<std::string>();
      claim_id(rec.thesis_id);
      rec.candidate_author_id = t.at("author").get<std::string>();
      for (const auto& s : t.value("supervisors", nlohmann::json::array())) {
        rec.supervisor_ids.insert(s.get<std::string>());
      }
      if (rec.supervisor_ids.count(rec.candidate_author_id) > 0) {
        throw IngestError("thesis " + rec.thesis_id +
                          " lists its author as a supervisor");
      }
      rec.completion_year = t.at("completion_year").get<int>();
      for (const auto& g : t.value("gold_articles", nlohmann::json::array())) {
        rec.gold_article_ids.insert(g.get<std::string>());
      }

      Document d;
      d.id = rec.thesis_id;
      d.role = Role::Thesis;
      d.author_ids = {rec.candidate_author_id};
      d.year = rec.completion_year;
      d.text = detail::read_text_file(base / t.at("text_file").get<std::string>(),
                                      d.id);
      corpus.documents.push_back(std::move(d));
      corpus.theses.push_back(std::move(rec));
    }

    for (const auto& a : doc.value("articles", nlohmann::json::array())) {
      Document d;
      d.id = a.at("id").get<std::string>();
      claim_id(d.id);
      const std::string thesis_id = a.at("thesis_id").get<std::string>();
      const ThesisRecord* thesis = corpus.find_thesis(thesis_id);
      if (thesis == nullptr) throw DanglingReferenceError(thesis_id);
      for (const auto& au : a.at("authors")) {
        d.author_ids.push_back(au.get<std::string>());
      }
      if (d.author_ids.empty()) {
        throw IngestError("article " + d.id + " has an empty byline");
      }
      if (std::find(d.author_ids.begin(), d.author_ids.end(),
                    thesis->candidate_author_id) == d.author_ids.end()) {
        throw IngestError("article " + d.id +
                          " does not list the thesis author " +
                          thesis->candidate_author_id);
      }
      d.role = Role::Article;
      d.year = a.at("year").get<int>();
      d.text = detail::read_text_file(base / a.at("text_file").get<std::string>(),
                                      d.id);
      corpus.article_thesis[d.id] = thesis_id;
      corpus.documents.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IngestError("malformed manifest " + manifest_path.string() + ": " +
                      e.what());
  }

  for (const ThesisRecord& t : corpus.theses) {
    for (const std::string& gold : t.gold_article_ids) {
      auto it = corpus.article_thesis.find(gold);
      if (it == corpus.article_thesis.end()) throw DanglingReferenceError(gold);
    }
  }
  return corpus;
}

/// Writes `corpus` back out as manifest.json plus one text file per document
/// under `dir`. load_manifest(save_manifest(c)) reproduces c exactly.
inline std::filesystem::path save_manifest(const Corpus& corpus,
                                           const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "texts");

  nlohmann::ordered_json manifest;
  manifest["theses"] = nlohmann::ordered_json::array();
  manifest["articles"] = nlohmann::ordered_json::array();

  for (const Document& d : corpus.documents) {
    const std::string rel = "texts/" + d.id + ".txt";
    std::ofstream out(dir / rel, std::ios::binary);
    if (!out) throw IngestError("cannot write text file: " + (dir / rel).string());
    out << d.text;

    if (d.role == Role::Thesis) {
      const ThesisRecord* t = corpus.find_thesis(d.id);
      nlohmann::ordered_json jt;
      jt["id"] = d.id;
      jt["author"] = t->candidate_author_id;
      jt["supervisors"] = t->supervisor_ids;
      jt["completion_year"] = t->completion_year;
      jt["text_file"] = rel;
      jt["gold_articles"] = t->gold_article_ids;
      manifest["theses"].push_back(jt);
    } else {
      nlohmann::ordered_json ja;
      ja["id"] = d.id;
      ja["thesis_id"] = corpus.article_thesis.at(d.id);
      ja["authors"] = d.author_ids;
      ja["year"] = d.year;
      ja["text_file"] = rel;
      manifest["articles"].push_back(ja);
    }
  }

  const fs::path manifest_path = dir / "manifest.json";
  std::ofstream out(manifest_path);
  if (!out) throw IngestError("cannot write manifest: " + manifest_path.string());
  out << manifest.dump(2) << "\n";
  return manifest_path;
}

struct WindowFilterResult {
  Corpus corpus;
  std::vector<std::string> excluded_article_ids;  // sorted
};

/// Drops articles published more than `max_years_after` years after their
/// thesis's completion. Articles published before completion are always kept.
inline WindowFilterResult filter_publication_window(const Corpus& corpus,
                                                    int max_years_after = 2) {
  WindowFilterResult result;
  result.corpus.theses = corpus.theses;
  for (const Document& d : corpus.documents) {
    if (d.role == Role::Thesis) {
      result.corpus.documents.push_back(d);
      continue;
    }
    const std::string& thesis_id = corpus.article_thesis.at(d.id);
    const ThesisRecord* thesis = corpus.find_thesis(thesis_id);
    if (d.year <= thesis->completion_year + max_years_after) {
      result.corpus.documents.push_back(d);
      result.corpus.article_thesis[d.id] = thesis_id;
    } else {
      result.excluded_article_ids.push_back(d.id);
    }
  }
  std::sort(result.excluded_article_ids.begin(),
            result.excluded_article_ids.end());
  return result;
}

}  // namespace derivata

#endif  // DERIVATA_CORPUS_HPP
