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

#ifndef DERIVATA_FIXTURE_HPP
#define DERIVATA_FIXTURE_HPP

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "derivata/corpus.hpp"
#include "derivata/errors.hpp"

namespace derivata {

/// Which of the three reference tables a record came from.
enum class Partition {
  Derivative,
  NonDerivSupervised,    // non-derivative, at least one supervisor coauthor
  NonDerivUnsupervised,  // non-derivative, no supervisor coauthor
};

inline constexpr std::string_view to_string(Partition p) {
  switch (p) {
    case Partition::Derivative: return "Derivative";
    case Partition::NonDerivSupervised: return "NonDerivSupervised";
    case Partition::NonDerivUnsupervised: return "NonDerivUnsupervised";
  }
  return "?";
}

struct FixtureRecord {
  ComparisonRecord record;
  Partition partition;
};

enum class IntegrityMode {
  Strict,  // section sum mismatch raises FixtureIntegrityError
  Warn,    // mismatching rows are kept and reported
};

struct FixtureData {
  std::vector<FixtureRecord> rows;                // file row order preserved
  std::vector<std::string> integrity_warnings;    // row ids with sum mismatch
};

inline constexpr std::array<std::string_view, 12> kFixtureColumns = {
    "AUTHORS-ARTICLES", "SIMILARITY INDEX", "TITLE",   "ABSTRACT",
    "INTRODUCTION",     "METHODOLOGY",      "RESULTS", "DISCUSSION",
    "REFERENCES",       "MATCHES",          "AUTHOR POSITION", "SUPERVISORS"};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(std::string_view(line).substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

inline int parse_int(std::string_view field, const std::string& context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FixtureIntegrityError("bad integer '" + std::string(field) + "' in " +
                                context);
  }
  return value;
}

// "61%" or "61" -> 61
inline int parse_percent(std::string_view field, const std::string& context) {
  if (!field.empty() && field.back() == '%') field.remove_suffix(1);
  return parse_int(field, context);
}

// "1/7" -> {1, 7}
inline std::pair<int, int> parse_ratio(std::string_view field,
                                       const std::string& context) {
  const std::size_t slash = field.find('/');
  if (slash == std::string_view::npos) {
    throw FixtureIntegrityError("bad ratio '" + std::string(field) + "' in " +
                                context);
  }
  return {parse_int(field.substr(0, slash), context),
          parse_int(field.substr(slash + 1), context)};
}

inline void check_fixture_header(const std::string& line,
                                 const std::filesystem::path& path) {
  const std::vector<std::string> fields = split_csv_line(line);
  if (fields.size() != kFixtureColumns.size()) {
    throw FixtureIntegrityError("unexpected header in " + path.string());
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i] != kFixtureColumns[i]) {
      throw FixtureIntegrityError("unexpected header column '" + fields[i] +
                                  "' in " + path.string());
    }
  }
}

}  // namespace detail

/// Parses one table in the canonical comparison CSV layout. Row order is
/// preserved. Integrity rule: MATCHES must equal the sum of the seven
/// section columns; violations either raise or are collected as warnings.
inline std::vector<ComparisonRecord> load_records_csv(
    const std::filesystem::path& path, IntegrityMode mode = IntegrityMode::Strict,
    std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) throw FixtureIntegrityError("cannot open fixture table: " + path.string());

  std::string line;
  if (!std::getline(in, line)) {
    throw FixtureIntegrityError("empty fixture table: " + path.string());
  }
  detail::check_fixture_header(line, path);

  std::vector<ComparisonRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    if (f.size() != kFixtureColumns.size()) {
      throw FixtureIntegrityError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected 12 fields, got " +
                                  std::to_string(f.size()));
    }
    const std::string context = path.string() + ":" + std::to_string(lineno);

    ComparisonRecord rec;
    rec.article_id = f[0];
    rec.similarity_index = detail::parse_percent(f[1], context);
    for (std::size_t s = 0; s < kSectionCount; ++s) {
      rec.section_matches.values[s] = detail::parse_int(f[2 + s], context);
    }
    rec.total_matches = detail::parse_int(f[9], context);
    const auto [rank, byline] = detail::parse_ratio(f[10], context);
    rec.author_position = {rank, byline};
    const auto [coauth, total] = detail::parse_ratio(f[11], context);
    rec.supervisor_overlap = {coauth, total};

    if (rec.author_position.rank < 1 ||
        rec.author_position.rank > rec.author_position.byline_size ||
        rec.supervisor_overlap.coauthoring < 0 ||
        rec.supervisor_overlap.coauthoring > rec.supervisor_overlap.total) {
      throw FixtureIntegrityError(context + ": position or supervisor ratio out of range");
    }
    if (rec.similarity_index < 0 || rec.similarity_index > 100) {
      throw FixtureIntegrityError(context + ": similarity index out of [0,100]");
    }

    if (rec.section_matches.total() != rec.total_matches) {
      if (mode == IntegrityMode::Strict) {
        throw FixtureIntegrityError(context + " (" + rec.article_id +
                                    "): section counts sum to " +
                                    std::to_string(rec.section_matches.total()) +
                                    " but MATCHES is " +
                                    std::to_string(rec.total_matches));
      }
      if (warnings != nullptr) warnings->push_back(rec.article_id);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

/// Loads the three-table fixture (derivative, non-derivative supervised,
/// non-derivative unsupervised) and tags each record with its partition.
inline FixtureData load_fixture(const std::filesystem::path& derivative_csv,
                                const std::filesystem::path& supervised_csv,
                                const std::filesystem::path& unsupervised_csv,
                                IntegrityMode mode = IntegrityMode::Strict) {
  FixtureData data;
  const std::array<std::pair<const std::filesystem::path*, Partition>, 3> tables =
      {{{&derivative_csv, Partition::Derivative},
        {&supervised_csv, Partition::NonDerivSupervised},
        {&unsupervised_csv, Partition::NonDerivUnsupervised}}};
  for (const auto& [path, partition] : tables) {
    for (ComparisonRecord& rec :
         load_records_csv(*path, mode, &data.integrity_warnings)) {
      data.rows.push_back({std::move(rec), partition});
    }
  }
  return data;
}

/// Convenience wrapper expecting table1.csv, table2.csv, table3.csv in `dir`.
inline FixtureData load_fixture_dir(const std::filesystem::path& dir,
                                    IntegrityMode mode = IntegrityMode::Strict) {
  namespace fs = std::filesystem;
  const fs::path t1 = dir / "table1.csv";
  const fs::path t2 = dir / "table2.csv";
  const fs::path t3 = dir / "table3.csv";
  for (const fs::path* p : {&t1, &t2, &t3}) {
    if (!fs::exists(*p)) {
      throw FixtureIntegrityError("missing fixture table: " + p->string());
    }
  }
  return load_fixture(t1, t2, t3, mode);
}

}  // namespace derivata

#endif  // DERIVATA_FIXTURE_HPP
