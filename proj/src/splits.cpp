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

#include "neraudit/splits.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "neraudit/rng.hpp"
#include "neraudit/spans.hpp"
#include "neraudit/version.hpp"

namespace neraudit {

namespace {

// Assigns each index in `indices` to part 0/1/2 using a seeded shuffle and
// largest-remainder sizes, then restores original order within each part.
std::array<std::vector<std::size_t>, 3> allocate(
    std::vector<std::size_t> indices, const Proportions& p,
    std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (std::size_t i = indices.size(); i > 1; --i) {
    std::swap(indices[i - 1], indices[rng.bounded(i)]);
  }
  const auto sizes = largest_remainder_sizes(indices.size(), p);

  std::array<std::vector<std::size_t>, 3> parts;
  std::size_t offset = 0;
  for (std::size_t part = 0; part < 3; ++part) {
    parts[part].assign(indices.begin() + offset,
                       indices.begin() + offset + sizes[part]);
    std::sort(parts[part].begin(), parts[part].end());
    offset += sizes[part];
  }
  return parts;
}

SplitTriple gather(const Corpus& c,
                   const std::array<std::vector<std::size_t>, 3>& parts) {
  SplitTriple out;
  Corpus* dest[3] = {&out.train, &out.dev, &out.test};
  for (std::size_t part = 0; part < 3; ++part) {
    dest[part]->sentences.reserve(parts[part].size());
    for (const std::size_t i : parts[part]) {
      dest[part]->sentences.push_back(c.sentences[i]);
    }
  }
  return out;
}

}  // namespace

void Proportions::validate() const {
  for (const double v : {train, dev, test}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error("proportions must be in [0, 1]");
    }
  }
  if (std::fabs(train + dev + test - 1.0) > 1e-9) {
    throw Error("proportions must sum to 1 (got " +
                std::to_string(train + dev + test) + ")");
  }
}

std::array<std::size_t, 3> largest_remainder_sizes(std::size_t n,
                                                   const Proportions& p) {
  p.validate();
  const double quotas[3] = {p.train * static_cast<double>(n),
                            p.dev * static_cast<double>(n),
                            p.test * static_cast<double>(n)};
  std::array<std::size_t, 3> sizes{};
  double fracs[3];
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    sizes[i] = static_cast<std::size_t>(std::floor(quotas[i]));
    fracs[i] = quotas[i] - std::floor(quotas[i]);
    assigned += sizes[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&fracs](std::size_t a, std::size_t b) {
    return fracs[a] != fracs[b] ? fracs[a] > fracs[b] : a < b;
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) {
    sizes[order[k % 3]] += 1;
  }
  return sizes;
}

SplitTriple random_split(const Corpus& c, const Proportions& p,
                         std::uint64_t seed) {
  if (c.empty()) throw Error("cannot split an empty corpus");
  std::vector<std::size_t> indices(c.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  return gather(c, allocate(std::move(indices), p, seed));
}

SplitTriple random_split_stratified(const Corpus& c, const Proportions& p,
                                    std::uint64_t seed, const GenreMap& gm) {
  if (c.empty()) throw Error("cannot split an empty corpus");

  std::map<std::string, std::vector<std::size_t>> by_genre;
  for (std::size_t i = 0; i < c.sentences.size(); ++i) {
    by_genre[gm.genre_of(c.sentences[i].source)].push_back(i);
  }

  // Genres take sub-streams in genre-map order so that adding an unrelated
  // genre to the map does not disturb the others.
  std::array<std::vector<std::size_t>, 3> merged;
  std::size_t genre_pos = 0;
  for (const auto& genre : gm.genres()) {
    const auto it = by_genre.find(genre);
    const std::uint64_t sub_seed = derive_seed(seed, genre_pos++);
    if (it == by_genre.end()) continue;
    const auto parts = allocate(it->second, p, sub_seed);
    for (std::size_t part = 0; part < 3; ++part) {
      merged[part].insert(merged[part].end(), parts[part].begin(),
                          parts[part].end());
    }
  }
  for (auto& part : merged) std::sort(part.begin(), part.end());
  return gather(c, merged);
}

std::vector<SplitTriple> generate_splits(const Corpus& c,
                                         const SplitSpec& spec) {
  spec.proportions.validate();
  if (spec.n_splits == 0) throw Error("n_splits must be positive");
  std::vector<SplitTriple> out;
  out.reserve(spec.n_splits);
  for (std::size_t i = 0; i < spec.n_splits; ++i) {
    out.push_back(random_split(c, spec.proportions, derive_seed(spec.seed, i)));
  }
  return out;
}

void write_split_files(const Corpus& c, const SplitSpec& spec,
                       const std::string& out_dir, const FormatConfig& cfg,
                       bool stratify, const GenreMap& gm) {
  namespace fs = std::filesystem;
  spec.proportions.validate();
  if (spec.n_splits == 0) throw Error("n_splits must be positive");

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + out_dir);

  nlohmann::json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["kind"] = "split_manifest";
  manifest["toolkit_version"] = kVersion;
  manifest["seed"] = spec.seed;
  manifest["n_splits"] = spec.n_splits;
  manifest["stratified_by_genre"] = stratify;
  manifest["proportions"] = {{"train", spec.proportions.train},
                             {"dev", spec.proportions.dev},
                             {"test", spec.proportions.test}};
  auto splits_json = nlohmann::json::array();

  for (std::size_t i = 0; i < spec.n_splits; ++i) {
    const std::uint64_t split_seed = derive_seed(spec.seed, i);
    const SplitTriple triple =
        stratify ? random_split_stratified(c, spec.proportions, split_seed, gm)
                 : random_split(c, spec.proportions, split_seed);
    const fs::path dir = fs::path(out_dir) / ("split_" + std::to_string(i));
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory: " + dir.string());
    write_conll_file(triple.train, (dir / "train.conll").string(), cfg);
    write_conll_file(triple.dev, (dir / "dev.conll").string(), cfg);
    write_conll_file(triple.test, (dir / "test.conll").string(), cfg);
    splits_json.push_back({{"index", i},
                           {"seed", split_seed},
                           {"sizes",
                            {{"train", triple.train.size()},
                             {"dev", triple.dev.size()},
                             {"test", triple.test.size()}}}});
  }
  manifest["splits"] = std::move(splits_json);

  std::ofstream out(fs::path(out_dir) / "manifest.json");
  if (!out) throw IoError("cannot open file for writing: manifest.json");
  out << manifest.dump(2) << "\n";
}

CrossGenreSets cross_genre_sets(const Corpus& train, const Corpus& dev,
                                const Corpus& test, const GenreMap& gm,
                                CrossGenreMode mode, const std::string& genre,
                                std::optional<std::string> dev_genre) {
  const auto genres_present = [&gm](const Corpus& c) {
    std::set<std::string> out;
    for (const auto& s : c.sentences) out.insert(gm.genre_of(s.source));
    return out;
  };

  const auto train_genres = genres_present(train);
  if (!train_genres.count(genre)) {
    throw Error("genre \"" + genre + "\" is absent from the training corpus");
  }

  CrossGenreSets out;
  if (mode == CrossGenreMode::kSingle) {
    out.train = filter_corpus(train, {genre}, SelectorKind::kGenre, gm);
  } else {
    std::set<std::string> keep;
    for (const auto& g : gm.genres()) {
      if (g != genre) keep.insert(g);
    }
    if (keep.empty()) {
      throw Error("leave-one-out needs at least two genres in the map");
    }
    out.train = filter_corpus(train, keep, SelectorKind::kGenre, gm);
  }

  const std::string dg = dev_genre.value_or(genre);
  if (!genres_present(dev).count(dg)) {
    throw Error("genre \"" + dg + "\" is absent from the dev corpus");
  }
  out.dev = filter_corpus(dev, {dg}, SelectorKind::kGenre, gm);

  const auto test_genres = genres_present(test);
  for (const auto& g : gm.genres()) {
    if (!test_genres.count(g)) continue;
    out.test_by_genre.emplace_back(
        g, filter_corpus(test, {g}, SelectorKind::kGenre, gm));
  }
  return out;
}

OverlapStats overlap_stats(const Corpus& train, const Corpus& test,
                           const std::string& entity_type) {
  OverlapStats out;
  out.entity_type = entity_type;

  std::unordered_set<std::string> train_surfaces;
  std::size_t train_instances = 0;
  for (const auto& s : train.sentences) {
    for (const auto& m : decode_mentions(s)) {
      if (m.entity_type != entity_type) continue;
      for (const auto& surface : m.surface) {
        train_surfaces.insert(surface);
        ++train_instances;
      }
    }
  }
  if (train_instances > 0) {
    out.train_unique_token_pct = 100.0 *
                                 static_cast<double>(train_surfaces.size()) /
                                 static_cast<double>(train_instances);
  }

  std::size_t test_instances = 0;
  std::size_t covered = 0;
  for (const auto& s : test.sentences) {
    for (const auto& m : decode_mentions(s)) {
      if (m.entity_type != entity_type) continue;
      for (const auto& surface : m.surface) {
        ++test_instances;
        if (train_surfaces.count(surface)) ++covered;
      }
    }
  }
  if (test_instances > 0) {
    out.test_token_overlap_pct = 100.0 * static_cast<double>(covered) /
                                 static_cast<double>(test_instances);
  }
  return out;
}

}  // namespace neraudit
