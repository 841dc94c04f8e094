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

#ifndef DERIVATA_PIPELINE_HPP
#define DERIVATA_PIPELINE_HPP

#include <algorithm>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "derivata/analysis.hpp"
#include "derivata/corpus.hpp"
#include "derivata/errors.hpp"
#include "derivata/fixture.hpp"
#include "derivata/report.hpp"
#include "derivata/segmenter.hpp"
#include "derivata/similarity.hpp"
#include "derivata/stats.hpp"

namespace derivata {

struct RunConfig {
  std::filesystem::path manifest;     // full pipeline input, or
  std::filesystem::path records_csv;  // precomputed comparison records
  std::optional<std::filesystem::path> gold_file;
  std::filesystem::path out_dir = "out";
  SimilarityParams similarity;
  double cut = kDefaultDiscussionCut;
  int max_years_after = 2;
  int jobs = 1;
  bool emit_dot = true;

  void validate() const {
    similarity.validate();
    if (cut < 0) throw ConfigError("cut threshold must be >= 0");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (manifest.empty() == records_csv.empty()) {
      throw ConfigError("exactly one of manifest or records input is required");
    }
  }
};

/// Fills the byline analytics of a pipeline-produced record: author
/// position, supervisor overlap and year offset, all relative to the
/// article's linked thesis.
inline void apply_byline_metadata(ComparisonRecord& record, const Corpus& corpus,
                                  const Document& article) {
  const std::string& thesis_id = corpus.article_thesis.at(article.id);
  const ThesisRecord* thesis = corpus.find_thesis(thesis_id);
  const Document* thesis_doc = corpus.find(thesis_id);

  const auto it = std::find(article.author_ids.begin(), article.author_ids.end(),
                            thesis->candidate_author_id);
  record.author_position = {
      static_cast<int>(it - article.author_ids.begin()) + 1,
      static_cast<int>(article.author_ids.size())};

  int coauthoring = 0;
  for (const std::string& supervisor : thesis->supervisor_ids) {
    if (std::find(article.author_ids.begin(), article.author_ids.end(),
                  supervisor) != article.author_ids.end()) {
      ++coauthoring;
    }
  }
  record.supervisor_overlap = {coauthoring,
                               static_cast<int>(thesis->supervisor_ids.size())};
  record.year_offset = article.year - thesis_doc->year;
}

/// Segments and compares every article of the corpus against its thesis.
/// Articles of one thesis share one fingerprint index. With jobs > 1 the
/// comparisons run in parallel; output order is by article id either way.
inline std::vector<ComparisonDetail> compare_corpus(const Corpus& corpus,
                                                    const SimilarityParams& params,
                                                    int jobs = 1) {
  params.validate();
  std::vector<const Document*> articles = corpus.articles();
  std::sort(articles.begin(), articles.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });

  std::map<std::string, FingerprintIndex> indexes;
  for (const Document& d : corpus.documents) {
    if (d.role == Role::Thesis) indexes.emplace(d.id, build_index(d, params));
  }

  std::vector<ComparisonDetail> details(articles.size());
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Document& article = *articles[i];
      const SectionSet sections = segment(article);
      const FingerprintIndex& index =
          indexes.at(corpus.article_thesis.at(article.id));
      details[i] = compare_detailed(sections, index, params);
      apply_byline_metadata(details[i].record, corpus, article);
    }
  };

  const std::size_t count = articles.size();
  const std::size_t workers =
      std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        try {
          worker(begin, end);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  return details;
}

struct PipelineResult {
  std::vector<std::filesystem::path> artifacts;
  std::size_t record_count = 0;
  std::size_t excluded_by_window = 0;
};

inline std::set<std::string> load_gold_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gold label file: " + path.string());
  std::set<std::string> gold;
  std::string line;
  while (std::getline(in, line)) {
    const std::string id = detail::trim(line);
    if (!id.empty()) gold.insert(id);
  }
  return gold;
}

/// The end-to-end run: ingest, publication-window filter, segmentation,
/// comparison, statistics, classification and reporting, or the same from a
/// precomputed records CSV. Artifacts are written atomically under out_dir.
inline PipelineResult run_pipeline(const RunConfig& config) {
  config.validate();
  namespace fs = std::filesystem;
  PipelineResult result;
  auto emit = [&](const fs::path& name, const std::string& content) {
    const fs::path path = config.out_dir / name;
    write_atomic(path, content);
    result.artifacts.push_back(path);
  };

  std::vector<ComparisonRecord> records;
  if (!config.manifest.empty()) {
    const Corpus loaded = load_manifest(config.manifest);
    WindowFilterResult filtered =
        filter_publication_window(loaded, config.max_years_after);
    result.excluded_by_window = filtered.excluded_article_ids.size();

    std::vector<ComparisonDetail> details =
        compare_corpus(filtered.corpus, config.similarity, config.jobs);
    for (const ComparisonDetail& d : details) records.push_back(d.record);
    emit("matches.json",
         comparison_audit_to_json(details, config.similarity).dump(2) + "\n");
  } else {
    records = load_records_csv(config.records_csv);
    std::sort(records.begin(), records.end(),
              [](const ComparisonRecord& a, const ComparisonRecord& b) {
                return a.article_id < b.article_id;
              });
  }
  result.record_count = records.size();
  emit("comparisons.csv", format_records_csv(records));

  // Correlation needs 3+ records and non-constant columns; a run over a tiny
  // corpus still succeeds and reports the skip.
  {
    nlohmann::ordered_json j;
    std::vector<double> sim, total;
    for (const ComparisonRecord& r : records) {
      sim.push_back(r.similarity_index);
      total.push_back(r.total_matches);
    }
    try {
      const SpearmanResult s = spearman(sim, total);
      j["rho"] = s.rho;
      j["p_two_sided"] = s.p_two_sided;
      j["n"] = records.size();
    } catch (const std::exception& e) {
      j["skipped"] = e.what();
    }
    emit("spearman.json", j.dump(2) + "\n");
  }

  if (records.size() >= 2) {
    const NormalizeResult normalized =
        range_normalize(make_variable_table(records));
    const ProximityMatrix proximity = proximity_matrix(normalized.table);
    emit("proximity.csv", format_proximity_csv(proximity));
    const Dendrogram dendrogram = average_linkage_cluster(proximity);
    emit("dendrogram.json", dendrogram_to_json(dendrogram).dump(2) + "\n");
    if (config.emit_dot) {
      emit("dendrogram.dot", format_dendrogram_dot(dendrogram));
    }
  }

  std::vector<std::pair<std::string, Classification>> classifications;
  std::vector<bool> derivative_flags;
  {
    std::ostringstream csv;
    csv << "article_id,classification,discussion_matches\n";
    for (const ComparisonRecord& r : records) {
      const Classification c = classify(r, config.cut);
      classifications.emplace_back(r.article_id, c);
      derivative_flags.push_back(c == Classification::Derivative);
      csv << r.article_id << "," << to_string(c) << ","
          << r.section_matches[SectionLabel::Discussion] << "\n";
    }
    emit("classifications.csv", csv.str());
  }

  if (config.gold_file.has_value()) {
    const std::set<std::string> gold = load_gold_file(*config.gold_file);
    std::vector<double> scores;
    std::vector<bool> labels;
    for (const ComparisonRecord& r : records) {
      if (!r.has_section(SectionLabel::Discussion)) continue;
      scores.push_back(r.section_matches[SectionLabel::Discussion]);
      labels.push_back(gold.count(r.article_id) > 0);
    }
    const RocAnalysis analysis = roc(scores, labels);
    emit("roc_points.csv", format_roc_points_csv(analysis));
    nlohmann::ordered_json j = roc_to_json(analysis);
    const Confusion confusion = gold_confusion(classifications, gold);
    j["confusion"] = {{"tp", confusion.tp},
                      {"fp", confusion.fp},
                      {"fn", confusion.fn},
                      {"tn", confusion.tn},
                      {"sensitivity", confusion.sensitivity},
                      {"fpr", confusion.fpr}};
    emit("roc.json", j.dump(2) + "\n");
  }

  {
    std::map<std::string, GroupSummary> groups;
    std::vector<ComparisonRecord> deriv, nonderiv, unclassifiable;
    for (std::size_t i = 0; i < records.size(); ++i) {
      switch (classifications[i].second) {
        case Classification::Derivative: deriv.push_back(records[i]); break;
        case Classification::NonDerivative: nonderiv.push_back(records[i]); break;
        case Classification::Unclassifiable:
          unclassifiable.push_back(records[i]);
          break;
      }
    }
    nlohmann::ordered_json j;
    j["cut"] = config.cut;
    j["records"] = records.size();
    j["unclassifiable"] = nlohmann::ordered_json::array();
    for (const ComparisonRecord& r : unclassifiable) {
      j["unclassifiable"].push_back(r.article_id);
    }
    if (!deriv.empty()) {
      groups["Derivative"] = summarize(deriv);
      j["groups"]["Derivative"] = summary_to_json(groups["Derivative"]);
    }
    if (!nonderiv.empty()) {
      groups["NonDerivative"] = summarize(nonderiv);
      j["groups"]["NonDerivative"] = summary_to_json(groups["NonDerivative"]);
    }
    if (!deriv.empty() && !nonderiv.empty()) {
      bool has_supervised = false, has_unsupervised = false;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (classifications[i].second != Classification::NonDerivative) continue;
        (records[i].supervisor_overlap.coauthoring > 0 ? has_supervised
                                                       : has_unsupervised) = true;
      }
      if (has_supervised && has_unsupervised) {
        std::vector<ComparisonRecord> classifiable;
        std::vector<bool> flags;
        for (std::size_t i = 0; i < records.size(); ++i) {
          if (classifications[i].second == Classification::Unclassifiable) continue;
          classifiable.push_back(records[i]);
          flags.push_back(classifications[i].second == Classification::Derivative);
        }
        const ThreeWayMeans means = supervised_similarity_means(classifiable, flags);
        j["similarity_means_by_supervision"] = {
            {"derivative", means.derivative},
            {"nonderivative_supervised", means.nonderivative_supervised},
            {"nonderivative_unsupervised", means.nonderivative_unsupervised}};
      }
    }
    emit("summary.json", j.dump(2) + "\n");
    emit("summary.txt", format_summary_text(groups));
  }

  return result;
}

}  // namespace derivata

#endif  // DERIVATA_PIPELINE_HPP
