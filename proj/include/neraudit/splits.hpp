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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "neraudit/corpus.hpp"

namespace neraudit {

// Train/dev/test fractions. Must be in [0, 1] and sum to 1 within 1e-9.
struct Proportions {
  double train = 0.0;
  double dev = 0.0;
  double test = 0.0;

  void validate() const;
};

struct SplitSpec {
  Proportions proportions;
  std::uint64_t seed = 0;
  std::size_t n_splits = 1;
};

struct SplitTriple {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Integer allocation of n sentences: floor of each quota, leftovers by
// descending fractional part (ties to the earlier part).
std::array<std::size_t, 3> largest_remainder_sizes(std::size_t n,
                                                   const Proportions& p);

// Sentence-level split: a seeded permutation decides membership, sizes come
// from largest-remainder rounding, and each part keeps original corpus
// order. The parts are disjoint and their union is the corpus.
SplitTriple random_split(const Corpus& c, const Proportions& p,
                         std::uint64_t seed);

// Like random_split, applied independently within each genre so that every
// genre keeps the global proportions.
SplitTriple random_split_stratified(const Corpus& c, const Proportions& p,
                                    std::uint64_t seed, const GenreMap& gm);

// Split i uses derive_seed(spec.seed, i).
std::vector<SplitTriple> generate_splits(const Corpus& c,
                                         const SplitSpec& spec);

// Writes split_<i>/{train,dev,test}.conll under out_dir plus a single
// manifest.json recording seed, proportions, sizes and toolkit version.
void write_split_files(const Corpus& c, const SplitSpec& spec,
                       const std::string& out_dir,
                       const FormatConfig& cfg = {}, bool stratify = false,
                       const GenreMap& gm = GenreMap::default_map());

enum class CrossGenreMode {
  kSingle,      // train restricted to one genre
  kLeaveOneOut  // train restricted to every genre except one
};

struct CrossGenreSets {
  Corpus train;
  Corpus dev;
  // One test corpus per genre present in the test role, in genre-map order.
  std::vector<std::pair<std::string, Corpus>> test_by_genre;
};

// Filters role corpora by genre for cross-genre experiments. dev defaults
// to the named genre (the held-out genre in leave-one-out mode).
CrossGenreSets cross_genre_sets(const Corpus& train, const Corpus& dev,
                                const Corpus& test, const GenreMap& gm,
                                CrossGenreMode mode, const std::string& genre,
                                std::optional<std::string> dev_genre = {});

struct OverlapStats {
  std::string entity_type;
  // Percentage of test entity-token instances (of this type) whose surface
  // also occurs inside a train mention of the same type. Absent when the
  // test corpus has no such instances.
  std::optional<double> test_token_overlap_pct;
  // 100 * distinct surfaces / total instances over train entity tokens of
  // this type. Absent when the train corpus has no such instances.
  std::optional<double> train_unique_token_pct;
};

OverlapStats overlap_stats(const Corpus& train, const Corpus& test,
                           const std::string& entity_type);

}  // namespace neraudit
