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

#ifndef DERIVATA_REPORT_HPP
#define DERIVATA_REPORT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "derivata/analysis.hpp"
#include "derivata/corpus.hpp"
#include "derivata/fixture.hpp"
#include "derivata/segmenter.hpp"
#include "derivata/similarity.hpp"
#include "derivata/stats.hpp"

namespace derivata {

namespace detail {

inline std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

}  // namespace detail

/// Writes via a temp file in the same directory plus an atomic rename, so a
/// failed run never leaves a partial artifact behind.
inline void write_atomic(const std::filesystem::path& path,
                         const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// Comparison records in the canonical CSV layout, one row per record.
inline std::string format_records_csv(std::span<const ComparisonRecord> records) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kFixtureColumns.size(); ++i) {
    out << (i ? "," : "") << kFixtureColumns[i];
  }
  out << "\n";
  for (const ComparisonRecord& rec : records) {
    out << rec.article_id << "," << std::lround(rec.similarity_index) << "%";
    for (SectionLabel label : kAllSections) {
      out << "," << rec.section_matches[label];
    }
    out << "," << rec.total_matches;
    out << "," << rec.author_position.rank << "/" << rec.author_position.byline_size;
    out << "," << rec.supervisor_overlap.coauthoring << "/"
        << rec.supervisor_overlap.total;
    out << "\n";
  }
  return out.str();
}

inline std::string format_proximity_csv(const ProximityMatrix& matrix) {
  std::ostringstream out;
  for (const std::string& label : matrix.labels) out << "," << label;
  out << "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.labels[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out << "," << detail::fixed(matrix.at(i, j), 3);
    }
    out << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json dendrogram_to_json(const Dendrogram& dendrogram) {
  nlohmann::ordered_json j;
  j["leaves"] = dendrogram.leaf_labels;
  j["merges"] = nlohmann::ordered_json::array();
  const int n = static_cast<int>(dendrogram.leaf_labels.size());
  for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
    const Merge& m = dendrogram.merges[s];
    nlohmann::ordered_json jm;
    jm["cluster_a"] = m.cluster_a;
    jm["cluster_b"] = m.cluster_b;
    jm["height"] = m.height;
    jm["size"] = m.size;
    jm["members"] = dendrogram.member_labels(n + static_cast<int>(s));
    j["merges"].push_back(jm);
  }
  j["flags"] = dendrogram.flags;
  return j;
}

inline std::string format_dendrogram_dot(const Dendrogram& dendrogram) {
  std::ostringstream out;
  out << "graph dendrogram {\n  node [shape=box];\n";
  const int n = static_cast<int>(dendrogram.leaf_labels.size());
  for (int i = 0; i < n; ++i) {
    out << "  c" << i << " [label=\"" << dendrogram.leaf_labels[i] << "\"];\n";
  }
  for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
    const Merge& m = dendrogram.merges[s];
    const int id = n + static_cast<int>(s);
    out << "  c" << id << " [label=\"h=" << detail::fixed(m.height, 3)
        << "\" shape=ellipse];\n";
    out << "  c" << id << " -- c" << m.cluster_a << ";\n";
    out << "  c" << id << " -- c" << m.cluster_b << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string format_roc_points_csv(const RocAnalysis& analysis) {
  std::ostringstream out;
  out << "threshold,sensitivity,fpr\n";
  for (const RocPoint& p : analysis.points) {
    if (std::isinf(p.threshold)) {
      out << (p.threshold > 0 ? "inf" : "-inf");
    } else {
      out << detail::fixed(p.threshold, 6);
    }
    out << "," << detail::fixed(p.sensitivity, 6) << ","
        << detail::fixed(p.fpr, 6) << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json roc_to_json(const RocAnalysis& analysis) {
  nlohmann::ordered_json j;
  j["auc"] = analysis.auc;
  j["cut"] = {{"threshold", analysis.cut.threshold},
              {"sensitivity", analysis.cut.sensitivity},
              {"fpr", analysis.cut.fpr},
              {"youden_j", analysis.cut.youden_j}};
  j["point_count"] = analysis.points.size();
  return j;
}

inline nlohmann::ordered_json summary_to_json(const GroupSummary& summary) {
  nlohmann::ordered_json j;
  j["n"] = summary.n;
  j["similarity_mean"] = summary.sim_mean;
  j["similarity_sd"] = summary.sim_sd;
  j["first_author_count"] = summary.first_author_count;
  j["first_author_rate"] = summary.first_author_rate;
  j["credit_mean"] = summary.credit_mean;
  j["authors_mean"] = summary.authors_mean;
  j["authors_sd"] = summary.authors_sd;
  j["supervisor_distribution"] = summary.supervisor_distribution;
  if (summary.published_by_completion_rate.has_value()) {
    j["published_by_completion_rate"] = *summary.published_by_completion_rate;
  } else {
    j["published_by_completion_rate"] = nullptr;
  }
  return j;
}

inline std::string format_summary_text(
    const std::map<std::string, GroupSummary>& groups) {
  std::ostringstream out;
  for (const auto& [name, g] : groups) {
    out << name << " (n=" << g.n << ")\n";
    out << "  similarity index: mean " << detail::fixed(g.sim_mean, 1) << "% (SD "
        << detail::fixed(g.sim_sd, 1) << ")\n";
    out << "  thesis author first: " << g.first_author_count << "/" << g.n << " ("
        << detail::fixed(100.0 * g.first_author_rate, 1) << "%)\n";
    out << "  authorship credit mean: " << detail::fixed(g.credit_mean, 2) << "\n";
    out << "  authors per article: " << detail::fixed(g.authors_mean, 1) << " (SD "
        << detail::fixed(g.authors_sd, 1) << ")\n";
    out << "  supervisor coauthorship:";
    for (const auto& [key, count] : g.supervisor_distribution) {
      out << " " << key << "=" << count;
    }
    out << "\n";
    if (g.published_by_completion_rate.has_value()) {
      out << "  published by completion year: "
          << detail::fixed(100.0 * *g.published_by_completion_rate, 1) << "%\n";
    }
    out << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json section_set_to_json(const SectionSet& set) {
  nlohmann::ordered_json j;
  j["doc_id"] = set.doc_id;
  j["sections"] = nlohmann::ordered_json::array();
  for (const Section& s : set.sections) {
    j["sections"].push_back({{"label", std::string(to_string(s.label))},
                             {"start", s.begin},
                             {"end", s.end}});
  }
  j["missing"] = nlohmann::ordered_json::array();
  for (SectionLabel label : set.missing) {
    j["missing"].push_back(std::string(to_string(label)));
  }
  j["flags"] = set.flags;
  return j;
}

/// Audit record of every match span, plus the parameters and the match
/// definition, written next to the comparison CSV.
inline nlohmann::ordered_json comparison_audit_to_json(
    std::span<const ComparisonDetail> details, const SimilarityParams& params) {
  nlohmann::ordered_json j;
  j["params"] = {{"k", params.k},
                 {"window", params.window},
                 {"min_match_tokens", params.min_match_tokens}};
  j["match_definition"] =
      "maximal merged span: maximal run of position-wise equal tokens, "
      "article-side overlaps collapsed to the longest run";
  j["comparisons"] = nlohmann::ordered_json::array();
  for (const ComparisonDetail& detail : details) {
    nlohmann::ordered_json jc;
    jc["article_id"] = detail.record.article_id;
    jc["thesis_id"] = detail.record.thesis_id;
    jc["similarity_index"] = detail.record.similarity_index;
    jc["sections"] = nlohmann::ordered_json::array();
    for (const SectionComparison& sc : detail.sections) {
      nlohmann::ordered_json js;
      js["label"] = std::string(to_string(sc.label));
      js["tokens"] = sc.token_count;
      js["covered_tokens"] = sc.covered_tokens;
      js["spans"] = nlohmann::ordered_json::array();
      for (const MatchSpan& span : sc.spans) {
        js["spans"].push_back({{"article_begin", span.article_begin},
                               {"thesis_begin", span.thesis_begin},
                               {"length", span.length}});
      }
      jc["sections"].push_back(js);
    }
    j["comparisons"].push_back(jc);
  }
  return j;
}

}  // namespace derivata

#endif  // DERIVATA_REPORT_HPP
