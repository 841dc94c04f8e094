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

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "derivata/derivata.hpp"

namespace {

namespace fs = std::filesystem;
using namespace derivata;

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIngest = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitFixture = 5;

void emit(const fs::path& out_dir, const std::string& name,
          const std::string& content) {
  write_atomic(out_dir / name, content);
  std::cout << "wrote " << (out_dir / name).string() << "\n";
}

int cmd_ingest(const fs::path& manifest, const fs::path& out_dir,
               int max_years_after) {
  const Corpus corpus = load_manifest(manifest);
  const WindowFilterResult filtered =
      filter_publication_window(corpus, max_years_after);
  save_manifest(filtered.corpus, out_dir);
  std::cout << "theses: " << filtered.corpus.thesis_count()
            << ", articles: " << filtered.corpus.article_count()
            << ", excluded by window: " << filtered.excluded_article_ids.size()
            << "\n";
  for (const std::string& id : filtered.excluded_article_ids) {
    std::cout << "excluded: " << id << "\n";
  }
  return kExitOk;
}

int cmd_segment(const fs::path& manifest, const fs::path& out_dir) {
  const Corpus corpus = load_manifest(manifest);
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const Document* article : corpus.articles()) {
    all.push_back(section_set_to_json(segment(*article)));
  }
  emit(out_dir, "segments.json", all.dump(2) + "\n");
  return kExitOk;
}

int cmd_compare(const fs::path& manifest, const fs::path& out_dir,
                const SimilarityParams& params, int max_years_after, int jobs) {
  const Corpus corpus = load_manifest(manifest);
  const WindowFilterResult filtered =
      filter_publication_window(corpus, max_years_after);
  const std::vector<ComparisonDetail> details =
      compare_corpus(filtered.corpus, params, jobs);
  std::vector<ComparisonRecord> records;
  for (const ComparisonDetail& d : details) records.push_back(d.record);
  emit(out_dir, "comparisons.csv", format_records_csv(records));
  emit(out_dir, "matches.json",
       comparison_audit_to_json(details, params).dump(2) + "\n");
  return kExitOk;
}

int cmd_stats(const fs::path& records_csv, const fs::path& out_dir,
              bool emit_dot) {
  const std::vector<ComparisonRecord> records = load_records_csv(records_csv);

  std::vector<double> sim, total;
  for (const ComparisonRecord& r : records) {
    sim.push_back(r.similarity_index);
    total.push_back(r.total_matches);
  }
  const SpearmanResult s = spearman(sim, total);
  nlohmann::ordered_json js;
  js["rho"] = s.rho;
  js["p_two_sided"] = s.p_two_sided;
  js["n"] = records.size();
  emit(out_dir, "spearman.json", js.dump(2) + "\n");

  const NormalizeResult normalized = range_normalize(make_variable_table(records));
  for (const std::string& label : normalized.constant_columns) {
    std::cout << "constant column flagged: " << label << "\n";
  }
  const ProximityMatrix proximity = proximity_matrix(normalized.table);
  emit(out_dir, "proximity.csv", format_proximity_csv(proximity));

  const Dendrogram dendrogram = average_linkage_cluster(proximity);
  emit(out_dir, "dendrogram.json", dendrogram_to_json(dendrogram).dump(2) + "\n");
  if (emit_dot) emit(out_dir, "dendrogram.dot", format_dendrogram_dot(dendrogram));
  return kExitOk;
}

int cmd_roc(const fs::path& records_csv, const fs::path& gold_file,
            const fs::path& out_dir) {
  const std::vector<ComparisonRecord> records = load_records_csv(records_csv);
  const std::set<std::string> gold = load_gold_file(gold_file);
  for (const std::string& id : gold) {
    if (std::none_of(records.begin(), records.end(),
                     [&](const ComparisonRecord& r) { return r.article_id == id; })) {
      throw UnknownGoldIdError(id);
    }
  }
  std::vector<double> scores;
  std::vector<bool> labels;
  for (const ComparisonRecord& r : records) {
    if (!r.has_section(SectionLabel::Discussion)) continue;
    scores.push_back(r.section_matches[SectionLabel::Discussion]);
    labels.push_back(gold.count(r.article_id) > 0);
  }
  const RocAnalysis analysis = roc(scores, labels);
  emit(out_dir, "roc_points.csv", format_roc_points_csv(analysis));
  emit(out_dir, "roc.json", roc_to_json(analysis).dump(2) + "\n");
  std::cout << "auc: " << analysis.auc << ", cut threshold: "
            << analysis.cut.threshold << " (J=" << analysis.cut.youden_j << ")\n";
  return kExitOk;
}

int cmd_classify(const fs::path& records_csv, double cut, const fs::path& out_dir) {
  const std::vector<ComparisonRecord> records = load_records_csv(records_csv);
  std::ostringstream csv;
  csv << "article_id,classification,discussion_matches\n";
  int derivative = 0;
  for (const ComparisonRecord& r : records) {
    const Classification c = classify(r, cut);
    if (c == Classification::Derivative) ++derivative;
    csv << r.article_id << "," << to_string(c) << ","
        << r.section_matches[SectionLabel::Discussion] << "\n";
  }
  emit(out_dir, "classifications.csv", csv.str());
  std::cout << "derivative: " << derivative << "/" << records.size() << " at cut "
            << cut << "\n";
  return kExitOk;
}

int cmd_report(const RunConfig& config) {
  const PipelineResult result = run_pipeline(config);
  std::cout << "records: " << result.record_count << "\n";
  for (const fs::path& artifact : result.artifacts) {
    std::cout << "wrote " << artifact.string() << "\n";
  }
  return kExitOk;
}

int cmd_reproduce(const fs::path& fixture_dir, IntegrityMode mode) {
  const FixtureData data = load_fixture_dir(fixture_dir, mode);
  for (const std::string& warning : data.integrity_warnings) {
    std::cout << "integrity warning: " << warning << "\n";
  }
  const std::vector<CheckResult> results = run_fixture_checks(data);
  std::cout << format_checklist(results);
  const bool all_passed =
      std::all_of(results.begin(), results.end(),
                  [](const CheckResult& r) { return r.passed; });
  return all_passed ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derivata: identify articles derived from a thesis by "
               "section-level text similarity"};
  app.require_subcommand(1);

  std::string manifest, records_csv, gold_file, fixture_dir;
  std::string out_dir = "out";
  SimilarityParams params;
  double cut = kDefaultDiscussionCut;
  int max_years_after = 2;
  int jobs = 1;
  bool no_dot = false;
  bool warn_only = false;

  auto* ingest = app.add_subcommand("ingest", "validate a manifest and persist the corpus");
  ingest->add_option("--manifest", manifest, "manifest JSON")->required();
  ingest->add_option("--out-dir", out_dir, "output directory");
  ingest->add_option("--max-years-after", max_years_after,
                     "publication window after completion");

  auto* segment_cmd = app.add_subcommand("segment", "split articles into sections");
  segment_cmd->add_option("--manifest", manifest, "manifest JSON")->required();
  segment_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* compare_cmd =
      app.add_subcommand("compare", "compare each article against its thesis");
  compare_cmd->add_option("--manifest", manifest, "manifest JSON")->required();
  compare_cmd->add_option("--out-dir", out_dir, "output directory");
  compare_cmd->add_option("--k", params.k, "fingerprint k-gram length");
  compare_cmd->add_option("--window", params.window, "winnowing window");
  compare_cmd->add_option("--min-match", params.min_match_tokens,
                          "minimum match length in tokens");
  compare_cmd->add_option("--max-years-after", max_years_after,
                          "publication window after completion");
  compare_cmd->add_option("--jobs", jobs, "parallel comparison workers");

  auto* stats_cmd =
      app.add_subcommand("stats", "correlation, proximity matrix and dendrogram");
  stats_cmd->add_option("--records", records_csv, "comparison records CSV")
      ->required();
  stats_cmd->add_option("--out-dir", out_dir, "output directory");
  stats_cmd->add_flag("--no-dot", no_dot, "skip the Graphviz dendrogram");

  auto* roc_cmd = app.add_subcommand("roc", "ROC curve and Youden cut-point");
  roc_cmd->add_option("--records", records_csv, "comparison records CSV")
      ->required();
  roc_cmd->add_option("--gold", gold_file, "gold article ids, one per line");
  roc_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* classify_cmd =
      app.add_subcommand("classify", "label records by the Discussion cut");
  classify_cmd->add_option("--records", records_csv, "comparison records CSV")
      ->required();
  classify_cmd->add_option("--cut", cut, "Discussion match-count threshold");
  classify_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* report_cmd =
      app.add_subcommand("report", "full pipeline and summary report");
  report_cmd->add_option("--manifest", manifest, "manifest JSON");
  report_cmd->add_option("--records", records_csv,
                         "precomputed comparison records CSV");
  report_cmd->add_option("--gold", gold_file, "gold article ids, one per line");
  report_cmd->add_option("--out-dir", out_dir, "output directory");
  report_cmd->add_option("--k", params.k, "fingerprint k-gram length");
  report_cmd->add_option("--window", params.window, "winnowing window");
  report_cmd->add_option("--min-match", params.min_match_tokens,
                         "minimum match length in tokens");
  report_cmd->add_option("--cut", cut, "Discussion match-count threshold");
  report_cmd->add_option("--max-years-after", max_years_after,
                         "publication window after completion");
  report_cmd->add_option("--jobs", jobs, "parallel comparison workers");
  report_cmd->add_flag("--no-dot", no_dot, "skip the Graphviz dendrogram");

  auto* reproduce_cmd = app.add_subcommand(
      "reproduce", "run the reference-dataset checklist and print pass/fail");
  reproduce_cmd->add_option("--fixture", fixture_dir,
                            "directory with table1.csv table2.csv table3.csv")
      ->required();
  reproduce_cmd->add_flag("--warn-only", warn_only,
                          "report integrity violations instead of failing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand(ingest)) {
      return cmd_ingest(manifest, out_dir, max_years_after);
    }
    if (app.got_subcommand(segment_cmd)) return cmd_segment(manifest, out_dir);
    if (app.got_subcommand(compare_cmd)) {
      return cmd_compare(manifest, out_dir, params, max_years_after, jobs);
    }
    if (app.got_subcommand(stats_cmd)) {
      return cmd_stats(records_csv, out_dir, !no_dot);
    }
    if (app.got_subcommand(roc_cmd)) {
      if (gold_file.empty()) throw ConfigError("gold labels required for ROC");
      return cmd_roc(records_csv, gold_file, out_dir);
    }
    if (app.got_subcommand(classify_cmd)) {
      return cmd_classify(records_csv, cut, out_dir);
    }
    if (app.got_subcommand(report_cmd)) {
      RunConfig config;
      config.manifest = manifest;
      config.records_csv = records_csv;
      if (!gold_file.empty()) config.gold_file = gold_file;
      config.out_dir = out_dir;
      config.similarity = params;
      config.cut = cut;
      config.max_years_after = max_years_after;
      config.jobs = jobs;
      config.emit_dot = !no_dot;
      return cmd_report(config);
    }
    if (app.got_subcommand(reproduce_cmd)) {
      return cmd_reproduce(fixture_dir,
                           warn_only ? IntegrityMode::Warn : IntegrityMode::Strict);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IngestError& e) {
    std::cerr << "ingest error: " << e.what() << "\n";
    return kExitIngest;
  } catch (const FixtureIntegrityError& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return kExitFixture;
  } catch (const DegenerateInputError& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  }
  return kExitConfig;
}
