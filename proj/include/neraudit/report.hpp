// Copyright 2026 The neraudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neraudit/scorer.hpp"
#include "neraudit/splits.hpp"
#include "neraudit/stats.hpp"

namespace neraudit {

// One compared scope (overall, a type, a source, or a genre). Values are
// f1 fractions; delta is baseline - candidate, so positive = degradation.
struct ComparisonRow {
  std::string label;
  std::optional<double> baseline;
  std::optional<double> candidate;
  std::optional<double> delta;
};

struct ComparisonTable {
  std::string baseline_label = "None";
  std::string candidate_label = "candidate";
  std::vector<ComparisonRow> rows;
};

// Requires both reports to share grouping structure (same types, sources
// and genres); otherwise throws, listing the missing groups.
ComparisonTable compare(const ScoreReport& baseline,
                        const ScoreReport& candidate,
                        const std::string& candidate_label = "candidate");

// Canonical JSON: keys sorted, floats at full precision, top-level
// schema_version. Byte-identical across runs and platforms.
std::string to_json(const ScoreReport& r);
std::string to_json(const RunSummary& r);
std::string to_json(const TTestResult& r);
std::string to_json(const ComparisonTable& t);
std::string to_json(const OverlapStats& o);

ScoreReport score_report_from_json(std::string_view text);

enum class Layout { kOverall, kByType, kBySource, kByGenre, kAdversarial, kRuns };

// Markdown tables with scores in percent form, two decimals, rounded half
// away from zero (the JSON keeps full precision). kByType takes the k
// most/least frequent types; k = 0 lists every type.
std::string to_markdown(const ScoreReport& r, Layout layout, std::size_t k = 4);
std::string to_markdown(const RunSummary& r);
std::string to_markdown(const ComparisonTable& t);  // the adversarial layout

std::string to_csv(const ScoreReport& r, Layout layout, std::size_t k = 4);
std::string to_csv(const RunSummary& r);
std::string to_csv(const ComparisonTable& t);

// Exactly two decimals, half away from zero ("88.71", "-0.05").
std::string fixed2(double value);

}  // namespace neraudit
