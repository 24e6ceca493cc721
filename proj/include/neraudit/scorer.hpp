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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neraudit/corpus.hpp"
#include "neraudit/spans.hpp"

namespace neraudit {

struct Counts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  std::int64_t gold() const { return tp + fn; }
  std::int64_t predicted() const { return tp + fp; }
  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const PRF&, const PRF&) = default;
};

// Zero-denominator ratios are 0; f1 is 0 when precision + recall is 0.
PRF prf(const Counts& c);

// Match counts kept per entity type and in aggregate.
struct MatchCounts {
  Counts overall;
  std::map<std::string, Counts> per_type;

  MatchCounts& operator+=(const MatchCounts& o);
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

// Exact-match counting over sentence-aligned mention lists: a prediction is
// a true positive iff a gold mention with the same (type, start, end)
// exists in the same sentence, each gold mention matching at most once.
MatchCounts count_matches(std::span<const std::vector<Mention>> gold,
                          std::span<const std::vector<Mention>> pred);

struct TypeScore {
  Counts counts;
  std::optional<PRF> score;  // absent when the type has no gold mentions
  std::int64_t gold_mentions = 0;
};

struct GroupScore {
  Counts counts;
  std::optional<PRF> score;  // absent when the group has no gold mentions
  std::int64_t gold_mentions = 0;
};

enum class GroupBy { kNone, kType, kSource, kGenre };

struct ScoreReport {
  Counts overall;
  PRF overall_prf;
  std::int64_t gold_mentions = 0;
  std::map<std::string, TypeScore> per_type;
  std::map<std::string, GroupScore> per_source;
  std::map<std::string, GroupScore> per_genre;
  // Mean of per-type f1 over types with a score; auxiliary only, micro
  // values are the headline numbers.
  std::optional<double> macro_f1;
  // Genres of the map in first-appearance order, for rendering.
  std::vector<std::string> genre_order;
};

struct ScoreOptions {
  GroupBy group_by = GroupBy::kNone;
  bool check_surfaces = false;
  BioMode bio_mode = BioMode::kLenient;
  GenreMap genre_map = GenreMap::default_map();
};

// Entity-level micro scoring of aligned corpora. Counts are pooled before
// any ratio is taken, overall, per type, and per source/genre group.
ScoreReport score(const Corpus& gold, const Corpus& pred,
                  const ScoreOptions& options = {});

struct RankedType {
  std::string type;
  std::int64_t gold_mentions = 0;
  std::optional<PRF> score;
};

struct TypeRanking {
  std::vector<RankedType> most_frequent;
  std::vector<RankedType> least_frequent;
};

// k most / least frequent types by gold mention count, ties broken
// alphabetically. k larger than the type count returns all types.
TypeRanking rank_types(const ScoreReport& report, std::size_t k);

}  // namespace neraudit
