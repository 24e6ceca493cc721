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

#include "neraudit/scorer.hpp"

#include <algorithm>
#include <tuple>

namespace neraudit {

namespace {

using Triple = std::tuple<std::string, std::size_t, std::size_t>;

std::vector<Triple> triples_of(const std::vector<Mention>& mentions) {
  std::vector<Triple> out;
  out.reserve(mentions.size());
  for (const auto& m : mentions) out.emplace_back(m.entity_type, m.start, m.end);
  std::sort(out.begin(), out.end());
  return out;
}

// Sorted-merge matching within one sentence: equal triples pair up once,
// the rest fall out as fp / fn under their own type.
void count_sentence(const std::vector<Mention>& gold,
                    const std::vector<Mention>& pred, MatchCounts& acc) {
  const auto g = triples_of(gold);
  const auto p = triples_of(pred);
  std::size_t i = 0, j = 0;
  while (i < g.size() && j < p.size()) {
    if (g[i] == p[j]) {
      acc.per_type[std::get<0>(g[i])].tp += 1;
      acc.overall.tp += 1;
      ++i;
      ++j;
    } else if (g[i] < p[j]) {
      acc.per_type[std::get<0>(g[i])].fn += 1;
      acc.overall.fn += 1;
      ++i;
    } else {
      acc.per_type[std::get<0>(p[j])].fp += 1;
      acc.overall.fp += 1;
      ++j;
    }
  }
  for (; i < g.size(); ++i) {
    acc.per_type[std::get<0>(g[i])].fn += 1;
    acc.overall.fn += 1;
  }
  for (; j < p.size(); ++j) {
    acc.per_type[std::get<0>(p[j])].fp += 1;
    acc.overall.fp += 1;
  }
}

}  // namespace

PRF prf(const Counts& c) {
  PRF out;
  const double tp = static_cast<double>(c.tp);
  out.precision = (c.tp + c.fp) > 0 ? tp / static_cast<double>(c.tp + c.fp) : 0.0;
  out.recall = (c.tp + c.fn) > 0 ? tp / static_cast<double>(c.tp + c.fn) : 0.0;
  const double pr = out.precision + out.recall;
  out.f1 = pr > 0.0 ? 2.0 * out.precision * out.recall / pr : 0.0;
  return out;
}

MatchCounts& MatchCounts::operator+=(const MatchCounts& o) {
  overall += o.overall;
  for (const auto& [type, counts] : o.per_type) per_type[type] += counts;
  return *this;
}

MatchCounts count_matches(std::span<const std::vector<Mention>> gold,
                          std::span<const std::vector<Mention>> pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("sentence count mismatch: gold has " +
                         std::to_string(gold.size()) + ", pred has " +
                         std::to_string(pred.size()));
  }
  MatchCounts acc;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    count_sentence(gold[i], pred[i], acc);
  }
  return acc;
}

ScoreReport score(const Corpus& gold, const Corpus& pred,
                  const ScoreOptions& options) {
  if (gold.sentences.size() != pred.sentences.size()) {
    throw AlignmentError(
        "sentence count mismatch: gold has " +
        std::to_string(gold.sentences.size()) + " sentences, pred has " +
        std::to_string(pred.sentences.size()) + " (first missing index " +
        std::to_string(std::min(gold.sentences.size(), pred.sentences.size())) +
        ")");
  }
  for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
    const auto& gs = gold.sentences[i];
    const auto& ps = pred.sentences[i];
    if (gs.tokens.size() != ps.tokens.size()) {
      throw AlignmentError("sentence " + std::to_string(i) +
                           ": token count mismatch (gold " +
                           std::to_string(gs.tokens.size()) + ", pred " +
                           std::to_string(ps.tokens.size()) + ")");
    }
    if (options.check_surfaces) {
      for (std::size_t t = 0; t < gs.tokens.size(); ++t) {
        if (gs.tokens[t].surface != ps.tokens[t].surface) {
          throw AlignmentError("sentence " + std::to_string(i) + ", token " +
                               std::to_string(t) + ": surface mismatch (\"" +
                               gs.tokens[t].surface + "\" vs \"" +
                               ps.tokens[t].surface + "\")");
        }
      }
    }
  }

  std::vector<std::vector<Mention>> gold_mentions(gold.sentences.size());
  std::vector<std::vector<Mention>> pred_mentions(pred.sentences.size());
  for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
    gold_mentions[i] = decode_mentions(gold.sentences[i], options.bio_mode);
    pred_mentions[i] = decode_mentions(pred.sentences[i], options.bio_mode);
  }

  ScoreReport report;
  MatchCounts mc = count_matches(gold_mentions, pred_mentions);
  report.overall = mc.overall;
  report.overall_prf = prf(mc.overall);
  report.gold_mentions = mc.overall.gold();

  double macro_sum = 0.0;
  std::size_t macro_n = 0;
  for (const auto& [type, counts] : mc.per_type) {
    TypeScore ts;
    ts.counts = counts;
    ts.gold_mentions = counts.gold();
    if (ts.gold_mentions > 0) {
      ts.score = prf(counts);
      macro_sum += ts.score->f1;
      ++macro_n;
    }
    report.per_type.emplace(type, std::move(ts));
  }
  if (macro_n > 0) report.macro_f1 = macro_sum / static_cast<double>(macro_n);

  if (options.group_by == GroupBy::kSource ||
      options.group_by == GroupBy::kGenre) {
    std::map<std::string, MatchCounts> grouped;
    for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
      const std::string& source = gold.sentences[i].source;
      const std::string& key = options.group_by == GroupBy::kSource
                                   ? source
                                   : options.genre_map.genre_of(source);
      count_sentence(gold_mentions[i], pred_mentions[i], grouped[key]);
    }
    auto& dest = options.group_by == GroupBy::kSource ? report.per_source
                                                      : report.per_genre;
    for (const auto& [key, counts] : grouped) {
      GroupScore gs;
      gs.counts = counts.overall;
      gs.gold_mentions = counts.overall.gold();
      if (gs.gold_mentions > 0) gs.score = prf(counts.overall);
      dest.emplace(key, std::move(gs));
    }
    if (options.group_by == GroupBy::kGenre) {
      report.genre_order = options.genre_map.genres();
    }
  }
  return report;
}

TypeRanking rank_types(const ScoreReport& report, std::size_t k) {
  std::vector<RankedType> types;
  types.reserve(report.per_type.size());
  for (const auto& [type, ts] : report.per_type) {
    types.push_back(RankedType{type, ts.gold_mentions, ts.score});
  }
  k = std::min(k, types.size());

  TypeRanking out;
  std::sort(types.begin(), types.end(), [](const auto& a, const auto& b) {
    return a.gold_mentions != b.gold_mentions
               ? a.gold_mentions > b.gold_mentions
               : a.type < b.type;
  });
  out.most_frequent.assign(types.begin(), types.begin() + k);

  std::sort(types.begin(), types.end(), [](const auto& a, const auto& b) {
    return a.gold_mentions != b.gold_mentions
               ? a.gold_mentions < b.gold_mentions
               : a.type < b.type;
  });
  out.least_frequent.assign(types.begin(), types.begin() + k);
  return out;
}

}  // namespace neraudit
