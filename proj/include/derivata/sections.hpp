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

#ifndef DERIVATA_SECTIONS_HPP
#define DERIVATA_SECTIONS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace derivata {

/// The rhetorical sections an article is split into. The enum order is the
/// canonical column order used in every table and CSV this library emits.
enum class SectionLabel : int {
  Title = 0,
  Abstract,
  Introduction,
  Methodology,
  Results,
  Discussion,
  References,
};

inline constexpr std::size_t kSectionCount = 7;

inline constexpr std::array<SectionLabel, kSectionCount> kAllSections = {
    SectionLabel::Title,       SectionLabel::Abstract,
    SectionLabel::Introduction, SectionLabel::Methodology,
    SectionLabel::Results,     SectionLabel::Discussion,
    SectionLabel::References,
};

inline constexpr std::string_view to_string(SectionLabel label) {
  switch (label) {
    case SectionLabel::Title: return "Title";
    case SectionLabel::Abstract: return "Abstract";
    case SectionLabel::Introduction: return "Introduction";
    case SectionLabel::Methodology: return "Methodology";
    case SectionLabel::Results: return "Results";
    case SectionLabel::Discussion: return "Discussion";
    case SectionLabel::References: return "References";
  }
  return "?";
}

inline std::optional<SectionLabel> section_from_string(std::string_view name) {
  for (SectionLabel label : kAllSections) {
    if (name == to_string(label)) return label;
  }
  return std::nullopt;
}

/// Per-section integer counters indexed by SectionLabel.
struct SectionCounts {
  std::array<int, kSectionCount> values{};

  int& operator[](SectionLabel label) { return values[static_cast<int>(label)]; }
  int operator[](SectionLabel label) const { return values[static_cast<int>(label)]; }

  int total() const {
    int sum = 0;
    for (int v : values) sum += v;
    return sum;
  }

  friend bool operator==(const SectionCounts&, const SectionCounts&) = default;
};

}  // namespace derivata

#endif  // DERIVATA_SECTIONS_HPP
