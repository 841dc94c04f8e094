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

#ifndef DERIVATA_STATS_HPP
#define DERIVATA_STATS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "derivata/corpus.hpp"
#include "derivata/errors.hpp"

namespace derivata {

// ---------------------------------------------------------------------------
// Variable table and proximity matrix
// ---------------------------------------------------------------------------

/// Column order of the seven per-record variables fed into the proximity
/// analysis. References is deliberately not a variable.
inline constexpr std::array<std::string_view, 7> kVariableLabels = {
    "SIMILARITY INDEX", "TITLE",   "ABSTRACT",   "INTRODUCTION",
    "METHODOLOGY",      "RESULTS", "DISCUSSION"};

struct VariableTable {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;  // one column per label

  std::size_t row_count() const { return columns.empty() ? 0 : columns[0].size(); }
};

inline VariableTable make_variable_table(std::span<const ComparisonRecord> records) {
  VariableTable table;
  for (std::string_view label : kVariableLabels) {
    table.labels.emplace_back(label);
  }
  table.columns.assign(kVariableLabels.size(), {});
  for (const ComparisonRecord& rec : records) {
    table.columns[0].push_back(rec.similarity_index);
    table.columns[1].push_back(rec.section_matches[SectionLabel::Title]);
    table.columns[2].push_back(rec.section_matches[SectionLabel::Abstract]);
    table.columns[3].push_back(rec.section_matches[SectionLabel::Introduction]);
    table.columns[4].push_back(rec.section_matches[SectionLabel::Methodology]);
    table.columns[5].push_back(rec.section_matches[SectionLabel::Results]);
    table.columns[6].push_back(rec.section_matches[SectionLabel::Discussion]);
  }
  return table;
}

struct NormalizeResult {
  VariableTable table;
  std::vector<std::string> constant_columns;  // flagged, mapped to all zeros
};

/// Rescales every column to [0, 1] by (x - min) / (max - min). A constant
/// column has no range; it maps to all zeros and is flagged.
inline NormalizeResult range_normalize(const VariableTable& input) {
  if (input.row_count() < 2) {
    throw std::invalid_argument("range_normalize needs at least 2 rows");
  }
  NormalizeResult result;
  result.table.labels = input.labels;
  for (std::size_t c = 0; c < input.columns.size(); ++c) {
    const std::vector<double>& col = input.columns[c];
    const auto [mn_it, mx_it] = std::minmax_element(col.begin(), col.end());
    const double mn = *mn_it, mx = *mx_it;
    std::vector<double> out(col.size());
    if (mx == mn) {
      result.constant_columns.push_back(input.labels[c]);
      // all zeros
    } else {
      for (std::size_t r = 0; r < col.size(); ++r) {
        out[r] = (col[r] - mn) / (mx - mn);
      }
    }
    result.table.columns.push_back(std::move(out));
  }
  return result;
}

/// Symmetric matrix of squared Euclidean distances between columns.
struct ProximityMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d;

  double at(std::size_t i, std::size_t j) const { return d[i][j]; }
  std::size_t size() const { return labels.size(); }
};

/// d[i][j] = sum over rows of (col_i - col_j)^2. Expects an already
/// range-normalized table. Summation is in fixed row order so repeated runs
/// are bit-identical.
inline ProximityMatrix proximity_matrix(const VariableTable& table) {
  ProximityMatrix m;
  m.labels = table.labels;
  const std::size_t v = table.columns.size();
  const std::size_t rows = table.row_count();
  m.d.assign(v, std::vector<double>(v, 0.0));
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = i + 1; j < v; ++j) {
      double sum = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        const double diff = table.columns[i][r] - table.columns[j][r];
        sum += diff * diff;
      }
      m.d[i][j] = sum;
      m.d[j][i] = sum;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Hierarchical clustering (unweighted pair-group average, UPGMA)
// ---------------------------------------------------------------------------

/// One agglomeration step. Cluster ids 0..n-1 are leaves; the merge at step
/// s creates cluster id n+s.
struct Merge {
  int cluster_a = 0;
  int cluster_b = 0;
  double height = 0.0;
  int size = 0;
};

struct Dendrogram {
  std::vector<std::string> leaf_labels;
  std::vector<Merge> merges;  // length = leaves - 1, heights nondecreasing
  std::vector<std::string> flags;

  std::vector<int> members(int cluster_id) const {
    const int n = static_cast<int>(leaf_labels.size());
    if (cluster_id < n) return {cluster_id};
    const Merge& m = merges[cluster_id - n];
    std::vector<int> a = members(m.cluster_a);
    const std::vector<int> b = members(m.cluster_b);
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
  }

  std::vector<std::string> member_labels(int cluster_id) const {
    std::vector<std::string> out;
    for (int leaf : members(cluster_id)) out.push_back(leaf_labels[leaf]);
    return out;
  }
};

/// Agglomerates by repeatedly merging the pair of clusters at minimal
/// distance; after merging A and B, d(AB, C) = (|A| d(A,C) + |B| d(B,C)) /
/// (|A| + |B|). Exact ties are broken toward the lexicographically first
/// label pair and flagged.
inline Dendrogram average_linkage_cluster(const ProximityMatrix& matrix) {
  const int n = static_cast<int>(matrix.size());
  if (n < 2) throw std::invalid_argument("clustering needs at least 2 labels");

  struct Cluster {
    int id;
    int size;
    std::vector<std::string> key;  // sorted leaf labels, for tie-breaking
  };
  std::vector<Cluster> active;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    active.push_back({i, 1, {matrix.labels[i]}});
    for (int j = 0; j < n; ++j) dist[i][j] = matrix.d[i][j];
  }

  Dendrogram dendrogram;
  dendrogram.leaf_labels = matrix.labels;
  int next_id = n;

  auto pair_key = [&](std::size_t i, std::size_t j) {
    return active[i].key <= active[j].key
               ? std::make_pair(active[i].key, active[j].key)
               : std::make_pair(active[j].key, active[i].key);
  };

  while (active.size() > 1) {
    std::size_t best_i = 0, best_j = 1;
    double best = dist[0][1];
    bool tie = false;
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double d = dist[i][j];
        if (d < best) {
          best = d;
          best_i = i;
          best_j = j;
          tie = false;
        } else if (d == best && (i != best_i || j != best_j)) {
          tie = true;
          if (pair_key(i, j) < pair_key(best_i, best_j)) {
            best_i = i;
            best_j = j;
          }
        }
      }
    }
    if (tie) {
      dendrogram.flags.push_back("tie-at-merge-" +
                                 std::to_string(dendrogram.merges.size()));
    }

    Cluster merged;
    merged.id = next_id++;
    merged.size = active[best_i].size + active[best_j].size;
    merged.key = active[best_i].key;
    merged.key.insert(merged.key.end(), active[best_j].key.begin(),
                      active[best_j].key.end());
    std::sort(merged.key.begin(), merged.key.end());

    const auto [lo, hi] =
        active[best_i].key <= active[best_j].key
            ? std::make_pair(active[best_i].id, active[best_j].id)
            : std::make_pair(active[best_j].id, active[best_i].id);
    dendrogram.merges.push_back({lo, hi, best, merged.size});

    std::vector<double> new_row(active.size(), 0.0);
    for (std::size_t c = 0; c < active.size(); ++c) {
      if (c == best_i || c == best_j) continue;
      new_row[c] = (active[best_i].size * dist[best_i][c] +
                    active[best_j].size * dist[best_j][c]) /
                   merged.size;
    }

    // Remove the two merged clusters (higher index first), append the merge.
    const std::size_t hi_idx = std::max(best_i, best_j);
    const std::size_t lo_idx = std::min(best_i, best_j);
    for (std::size_t pass : {hi_idx, lo_idx}) {
      active.erase(active.begin() + pass);
      new_row.erase(new_row.begin() + pass);
      dist.erase(dist.begin() + pass);
      for (auto& row : dist) row.erase(row.begin() + pass);
    }
    active.push_back(merged);
    for (std::size_t c = 0; c < new_row.size(); ++c) {
      dist[c].push_back(new_row[c]);
    }
    new_row.push_back(0.0);
    dist.push_back(new_row);
  }
  return dendrogram;
}

// ---------------------------------------------------------------------------
// Spearman rank correlation
// ---------------------------------------------------------------------------

struct SpearmanResult {
  double rho = 0.0;
  double p_two_sided = 1.0;
};

enum class PValueMethod {
  Auto,         // permutation below 30 samples, t approximation otherwise
  TApprox,
  Permutation,
};

namespace detail {

inline std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

// Continued fraction for the regularized incomplete beta function.
inline double ibeta_cf(double a, double b, double x) {
  constexpr int kMaxIterations = 400;
  constexpr double kEpsilon = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

inline double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * ibeta_cf(a, b, x) / a;
  }
  return 1.0 - front * ibeta_cf(b, a, 1.0 - x) / b;
}

// P(T > t) for Student's t with nu degrees of freedom, t >= 0.
inline double student_t_sf(double t, double nu) {
  return 0.5 * ibeta(nu / 2.0, 0.5, nu / (nu + t * t));
}

}  // namespace detail

/// Spearman's rank correlation with average ranks for ties. The two-sided
/// p-value uses t = rho * sqrt((n-2)/(1-rho^2)) with n-2 degrees of freedom,
/// or a seeded 10^4-shuffle permutation test for small samples.
inline SpearmanResult spearman(std::span<const double> x, std::span<const double> y,
                               PValueMethod method = PValueMethod::Auto) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spearman: size mismatch");
  }
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("spearman needs at least 3 samples");

  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v[0]; });
  };
  if (constant(x) || constant(y)) {
    throw DegenerateInputError("spearman: constant input vector");
  }

  const std::vector<double> rx = detail::average_ranks(x);
  std::vector<double> ry = detail::average_ranks(y);
  SpearmanResult result;
  result.rho = detail::pearson(rx, ry);

  if (method == PValueMethod::Auto) {
    method = n < 30 ? PValueMethod::Permutation : PValueMethod::TApprox;
  }
  if (method == PValueMethod::TApprox) {
    const double r = std::clamp(result.rho, -1.0, 1.0);
    if (std::fabs(r) >= 1.0) {
      result.p_two_sided = 0.0;
    } else {
      const double t = std::fabs(r) * std::sqrt((n - 2) / (1.0 - r * r));
      result.p_two_sided =
          std::clamp(2.0 * detail::student_t_sf(t, static_cast<double>(n - 2)),
                     0.0, 1.0);
    }
  } else {
    constexpr int kShuffles = 10000;
    std::mt19937_64 rng(0x5eed5eedULL);
    const double observed = std::fabs(result.rho);
    int at_least_as_extreme = 0;
    for (int s = 0; s < kShuffles; ++s) {
      std::shuffle(ry.begin(), ry.end(), rng);
      if (std::fabs(detail::pearson(rx, ry)) >= observed - 1e-12) {
        ++at_least_as_extreme;
      }
    }
    result.p_two_sided =
        static_cast<double>(at_least_as_extreme + 1) / (kShuffles + 1);
  }
  return result;
}

// ---------------------------------------------------------------------------
// ROC curve and Youden cut-point
// ---------------------------------------------------------------------------

struct RocPoint {
  double threshold = 0.0;  // classify positive when score > threshold
  double sensitivity = 0.0;
  double fpr = 0.0;
};

struct CutPoint {
  double threshold = 0.0;
  double sensitivity = 0.0;
  double fpr = 0.0;
  double youden_j = 0.0;
};

struct RocAnalysis {
  std::vector<RocPoint> points;  // sorted by fpr, endpoints (0,0) and (1,1)
  double auc = 0.0;
  CutPoint cut;
};

/// The point maximizing J = sensitivity + specificity - 1. Ties resolve
/// toward higher specificity, then toward the higher threshold.
inline CutPoint youden_cut(const RocAnalysis& analysis) {
  const RocPoint* best = nullptr;
  double best_j = -2.0;
  for (const RocPoint& p : analysis.points) {
    const double j = p.sensitivity - p.fpr;
    const bool better =
        best == nullptr || j > best_j + 1e-15 ||
        (std::fabs(j - best_j) <= 1e-15 &&
         (p.fpr < best->fpr ||
          (p.fpr == best->fpr && p.threshold > best->threshold)));
    if (better) {
      best = &p;
      best_j = j;
    }
  }
  return {best->threshold, best->sensitivity, best->fpr, best_j};
}

/// ROC over candidate thresholds at the midpoints between consecutive
/// distinct score values, with infinite sentinels at both ends. AUC by the
/// trapezoidal rule, which equals the tie-aware pair-counting statistic.
inline RocAnalysis roc(std::span<const double> scores,
                       const std::vector<bool>& gold) {
  if (scores.size() != gold.size()) {
    throw std::invalid_argument("roc: size mismatch");
  }
  std::size_t positives = 0;
  for (bool g : gold) positives += g ? 1 : 0;
  const std::size_t negatives = gold.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw DegenerateInputError("roc: needs both a positive and a negative label");
  }

  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<double> thresholds;  // descending
  thresholds.push_back(std::numeric_limits<double>::infinity());
  for (std::size_t i = sorted.size(); i-- > 1;) {
    thresholds.push_back((sorted[i - 1] + sorted[i]) / 2.0);
  }
  thresholds.push_back(-std::numeric_limits<double>::infinity());

  struct Item {
    double score;
    bool gold;
  };
  std::vector<Item> items(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) items[i] = {scores[i], gold[i]};
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.score > b.score; });

  RocAnalysis analysis;
  std::size_t tp = 0, fp = 0, next = 0;
  for (double t : thresholds) {
    while (next < items.size() && items[next].score > t) {
      if (items[next].gold) ++tp;
      else ++fp;
      ++next;
    }
    analysis.points.push_back({t, static_cast<double>(tp) / positives,
                               static_cast<double>(fp) / negatives});
  }

  double auc = 0.0;
  for (std::size_t i = 1; i < analysis.points.size(); ++i) {
    const RocPoint& a = analysis.points[i - 1];
    const RocPoint& b = analysis.points[i];
    auc += (b.fpr - a.fpr) * (a.sensitivity + b.sensitivity) / 2.0;
  }
  analysis.auc = auc;
  analysis.cut = youden_cut(analysis);
  return analysis;
}

}  // namespace derivata

#endif  // DERIVATA_STATS_HPP
