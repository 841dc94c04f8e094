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

#ifndef DERIVATA_ANALYSIS_HPP
#define DERIVATA_ANALYSIS_HPP

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "derivata/corpus.hpp"
#include "derivata/errors.hpp"

namespace derivata {

inline constexpr double kDefaultDiscussionCut = 7.5;

enum class Classification {
  Derivative,
  NonDerivative,
  Unclassifiable,  // segmentation found no Discussion section
};

inline constexpr std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Derivative: return "Derivative";
    case Classification::NonDerivative: return "NonDerivative";
    case Classification::Unclassifiable: return "Unclassifiable";
  }
  return "?";
}

/// An article is derivative exactly when its Discussion match count exceeds
/// the cut. No other field takes part in the decision.
inline Classification classify(const ComparisonRecord& record,
                               double cut = kDefaultDiscussionCut) {
  if (!record.has_section(SectionLabel::Discussion)) {
    return Classification::Unclassifiable;
  }
  return record.section_matches[SectionLabel::Discussion] > cut
             ? Classification::Derivative
             : Classification::NonDerivative;
}

/// Credit share of the author at 1-based `position` in a byline of
/// `byline_size` authors: (1/i) / (1 + 1/2 + ... + 1/N). Shares over a
/// byline sum to 1 and strictly decrease with position.
inline double harmonic_credit(int position, int byline_size) {
  if (byline_size < 1 || position < 1 || position > byline_size) {
    throw PositionError("author position " + std::to_string(position) + "/" +
                        std::to_string(byline_size) + " out of range");
  }
  double harmonic = 0.0;
  for (int j = 1; j <= byline_size; ++j) harmonic += 1.0 / j;
  return (1.0 / position) / harmonic;
}

/// Aggregates over one group of comparison records.
struct GroupSummary {
  int n = 0;
  double sim_mean = 0.0;
  double sim_sd = 0.0;  // sample standard deviation (n-1); 0 when n == 1
  int first_author_count = 0;
  double first_author_rate = 0.0;
  double credit_mean = 0.0;
  double authors_mean = 0.0;
  double authors_sd = 0.0;
  std::map<std::string, int> supervisor_distribution;  // "s/m" -> count
  std::optional<double> published_by_completion_rate;  // year_offset <= 0
};

namespace detail {

inline std::pair<double, double> mean_sample_sd(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

}  // namespace detail

inline GroupSummary summarize(std::span<const ComparisonRecord> records) {
  if (records.empty()) throw EmptyGroupError("summarize: empty group");

  GroupSummary summary;
  summary.n = static_cast<int>(records.size());

  std::vector<double> sims, authors;
  double credit_sum = 0.0;
  int with_year = 0, by_completion = 0;
  for (const ComparisonRecord& rec : records) {
    sims.push_back(rec.similarity_index);
    authors.push_back(rec.author_position.byline_size);
    if (rec.author_position.rank == 1) ++summary.first_author_count;
    credit_sum +=
        harmonic_credit(rec.author_position.rank, rec.author_position.byline_size);
    const std::string key = std::to_string(rec.supervisor_overlap.coauthoring) +
                            "/" + std::to_string(rec.supervisor_overlap.total);
    ++summary.supervisor_distribution[key];
    if (rec.year_offset.has_value()) {
      ++with_year;
      if (*rec.year_offset <= 0) ++by_completion;
    }
  }

  std::tie(summary.sim_mean, summary.sim_sd) = detail::mean_sample_sd(sims);
  std::tie(summary.authors_mean, summary.authors_sd) =
      detail::mean_sample_sd(authors);
  summary.first_author_rate =
      static_cast<double>(summary.first_author_count) / summary.n;
  summary.credit_mean = credit_sum / summary.n;
  if (with_year > 0) {
    summary.published_by_completion_rate =
        static_cast<double>(by_completion) / with_year;
  }
  return summary;
}

/// Mean similarity index of (a) derivative records, (b) non-derivative
/// records with at least one supervisor coauthor, (c) non-derivative records
/// with none. `derivative[i]` labels `records[i]`.
struct ThreeWayMeans {
  double derivative = 0.0;
  double nonderivative_supervised = 0.0;
  double nonderivative_unsupervised = 0.0;
};

inline ThreeWayMeans supervised_similarity_means(
    std::span<const ComparisonRecord> records, const std::vector<bool>& derivative) {
  if (records.size() != derivative.size()) {
    throw std::invalid_argument("supervised_similarity_means: size mismatch");
  }
  double sum[3] = {0, 0, 0};
  int count[3] = {0, 0, 0};
  for (std::size_t i = 0; i < records.size(); ++i) {
    const int bucket = derivative[i]
                           ? 0
                           : (records[i].supervisor_overlap.coauthoring > 0 ? 1 : 2);
    sum[bucket] += records[i].similarity_index;
    ++count[bucket];
  }
  for (int b = 0; b < 3; ++b) {
    if (count[b] == 0) throw EmptyGroupError("supervised_similarity_means: empty bucket");
  }
  return {sum[0] / count[0], sum[1] / count[1], sum[2] / count[2]};
}

/// Confusion of the threshold classification against a user-supplied gold
/// set. Unclassifiable records do not enter the counts.
struct Confusion {
  int tp = 0, fp = 0, fn = 0, tn = 0;
  double sensitivity = 0.0;
  double fpr = 0.0;
};

inline Confusion gold_confusion(
    const std::vector<std::pair<std::string, Classification>>& classifications,
    const std::set<std::string>& gold_article_ids) {
  if (gold_article_ids.empty()) {
    throw DegenerateInputError("gold_confusion: empty gold set");
  }
  std::set<std::string> known;
  for (const auto& [id, c] : classifications) known.insert(id);
  for (const std::string& id : gold_article_ids) {
    if (known.count(id) == 0) throw UnknownGoldIdError(id);
  }

  Confusion confusion;
  for (const auto& [id, c] : classifications) {
    if (c == Classification::Unclassifiable) continue;
    const bool is_gold = gold_article_ids.count(id) > 0;
    const bool predicted = c == Classification::Derivative;
    if (predicted && is_gold) ++confusion.tp;
    else if (predicted && !is_gold) ++confusion.fp;
    else if (!predicted && is_gold) ++confusion.fn;
    else ++confusion.tn;
  }
  if (confusion.tp + confusion.fn > 0) {
    confusion.sensitivity =
        static_cast<double>(confusion.tp) / (confusion.tp + confusion.fn);
  }
  if (confusion.fp + confusion.tn > 0) {
    confusion.fpr = static_cast<double>(confusion.fp) / (confusion.fp + confusion.tn);
  }
  return confusion;
}

}  // namespace derivata

#endif  // DERIVATA_ANALYSIS_HPP
