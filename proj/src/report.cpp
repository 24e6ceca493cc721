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

#include "neraudit/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "neraudit/version.hpp"

namespace neraudit {

namespace {

using nlohmann::json;

json counts_json(const Counts& c) {
  return json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}};
}

json prf_json(const std::optional<PRF>& p) {
  if (!p) return nullptr;
  return json{
      {"precision", p->precision}, {"recall", p->recall}, {"f1", p->f1}};
}

Counts counts_from(const json& j) {
  Counts c;
  c.tp = j.at("tp").get<std::int64_t>();
  c.fp = j.at("fp").get<std::int64_t>();
  c.fn = j.at("fn").get<std::int64_t>();
  return c;
}

std::optional<PRF> prf_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  PRF p;
  p.precision = j.at("precision").get<double>();
  p.recall = j.at("recall").get<double>();
  p.f1 = j.at("f1").get<double>();
  return p;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Plain string table rendered as Markdown or CSV.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_markdown(const Table& t) {
  std::ostringstream out;
  out << "|";
  for (const auto& h : t.header) out << " " << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i) out << " --- |";
  out << "\n";
  for (const auto& row : t.rows) {
    out << "|";
    for (const auto& cell : row) out << " " << cell << " |";
    out << "\n";
  }
  return out.str();
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ",";
      out << cells[i];
    }
    out << "\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

std::string pct(double fraction) { return fixed2(fraction * 100.0); }

std::string pct_or_dash(const std::optional<PRF>& p,
                        double PRF::* field) {
  return p ? pct((*p).*field) : "-";
}

Table overall_table(const ScoreReport& r) {
  Table t;
  t.header = {"Precision", "Recall", "F1", "TP", "FP", "FN", "Gold"};
  t.rows.push_back({pct(r.overall_prf.precision), pct(r.overall_prf.recall),
                    pct(r.overall_prf.f1), std::to_string(r.overall.tp),
                    std::to_string(r.overall.fp), std::to_string(r.overall.fn),
                    std::to_string(r.gold_mentions)});
  return t;
}

Table by_type_table(const ScoreReport& r, std::size_t k) {
  Table t;
  t.header = {"Category", "Gold", "Precision", "Recall", "F1"};
  const auto add = [&t](const RankedType& rt) {
    t.rows.push_back({rt.type, std::to_string(rt.gold_mentions),
                      pct_or_dash(rt.score, &PRF::precision),
                      pct_or_dash(rt.score, &PRF::recall),
                      pct_or_dash(rt.score, &PRF::f1)});
  };
  if (k == 0) {
    const auto ranking = rank_types(r, r.per_type.size());
    for (const auto& rt : ranking.most_frequent) add(rt);
    return t;
  }
  const auto ranking = rank_types(r, k);
  t.rows.push_back({"Most-frequent entity types", "", "", "", ""});
  for (const auto& rt : ranking.most_frequent) add(rt);
  t.rows.push_back({"Least-frequent entity types", "", "", "", ""});
  for (const auto& rt : ranking.least_frequent) add(rt);
  return t;
}

Table group_table(const std::map<std::string, GroupScore>& groups,
                  const std::vector<std::string>& order, const char* label) {
  Table t;
  t.header = {label, "Gold", "Precision", "Recall", "F1"};
  const auto add = [&t, &groups](const std::string& name) {
    const auto it = groups.find(name);
    if (it == groups.end()) return;
    const auto& gs = it->second;
    t.rows.push_back({name, std::to_string(gs.gold_mentions),
                      pct_or_dash(gs.score, &PRF::precision),
                      pct_or_dash(gs.score, &PRF::recall),
                      pct_or_dash(gs.score, &PRF::f1)});
  };
  if (order.empty()) {
    for (const auto& [name, gs] : groups) add(name);
  } else {
    for (const auto& name : order) add(name);
  }
  return t;
}

Table runs_table(const RunSummary& r) {
  Table t;
  t.header = {"Runs", "Avg", "S.Dev", "Min", "Max"};
  t.rows.push_back({std::to_string(r.n), fixed2(r.mean),
                    r.sample_sd ? fixed2(*r.sample_sd) : "-", fixed2(r.min),
                    fixed2(r.max)});
  return t;
}

// Settings as rows, scopes as columns, the baseline ("None") row first and
// a delta row naming its sign convention last.
Table comparison_table(const ComparisonTable& c) {
  Table t;
  t.header.push_back("Setting");
  for (const auto& row : c.rows) t.header.push_back(row.label);

  std::vector<std::string> baseline{c.baseline_label};
  std::vector<std::string> candidate{c.candidate_label};
  std::vector<std::string> delta{"Delta (" + c.baseline_label + " - " +
                                 c.candidate_label + ")"};
  for (const auto& row : c.rows) {
    baseline.push_back(row.baseline ? pct(*row.baseline) : "-");
    candidate.push_back(row.candidate ? pct(*row.candidate) : "-");
    delta.push_back(row.delta ? pct(*row.delta) : "-");
  }
  t.rows.push_back(std::move(baseline));
  t.rows.push_back(std::move(candidate));
  t.rows.push_back(std::move(delta));
  return t;
}

Table layout_table(const ScoreReport& r, Layout layout, std::size_t k) {
  switch (layout) {
    case Layout::kOverall:
      return overall_table(r);
    case Layout::kByType:
      return by_type_table(r, k);
    case Layout::kBySource:
      if (r.per_source.empty()) {
        throw Error("report has no per-source grouping");
      }
      return group_table(r.per_source, {}, "Source");
    case Layout::kByGenre:
      if (r.per_genre.empty()) {
        throw Error("report has no per-genre grouping");
      }
      return group_table(r.per_genre, r.genre_order, "Genre");
    case Layout::kAdversarial:
      throw Error("the adversarial layout renders comparison tables");
    case Layout::kRuns:
      throw Error("the runs layout renders run summaries");
  }
  throw Error("unreachable layout");
}

}  // namespace

std::string fixed2(double value) {
  const long long scaled = std::llround(value * 100.0);
  const bool negative = scaled < 0;
  const unsigned long long magnitude =
      negative ? 0ull - static_cast<unsigned long long>(scaled)
               : static_cast<unsigned long long>(scaled);
  std::string out = negative ? "-" : "";
  out += std::to_string(magnitude / 100);
  out += '.';
  const unsigned long long frac = magnitude % 100;
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

ComparisonTable compare(const ScoreReport& baseline,
                        const ScoreReport& candidate,
                        const std::string& candidate_label) {
  const auto check_structure = [](const auto& a, const auto& b,
                                  const char* what) {
    std::vector<std::string> missing;
    for (const auto& [key, unused] : a) {
      if (!b.count(key)) missing.push_back("candidate " + std::string(what) +
                                           " \"" + key + "\"");
    }
    for (const auto& [key, unused] : b) {
      if (!a.count(key)) missing.push_back("baseline " + std::string(what) +
                                           " \"" + key + "\"");
    }
    if (!missing.empty()) {
      std::string msg = "report structure mismatch; missing:";
      for (const auto& m : missing) msg += " " + m + ";";
      throw Error(msg);
    }
  };
  check_structure(baseline.per_type, candidate.per_type, "type");
  check_structure(baseline.per_source, candidate.per_source, "source");
  check_structure(baseline.per_genre, candidate.per_genre, "genre");

  ComparisonTable out;
  out.candidate_label = candidate_label;

  const auto add = [&out](const std::string& label, std::optional<double> b,
                          std::optional<double> c) {
    ComparisonRow row;
    row.label = label;
    row.baseline = b;
    row.candidate = c;
    if (b && c) row.delta = *b - *c;
    out.rows.push_back(std::move(row));
  };
  const auto f1_of = [](const std::optional<PRF>& p) -> std::optional<double> {
    if (!p) return std::nullopt;
    return p->f1;
  };

  add("overall", baseline.overall_prf.f1, candidate.overall_prf.f1);
  for (const auto& [type, ts] : baseline.per_type) {
    add(type, f1_of(ts.score), f1_of(candidate.per_type.at(type).score));
  }
  for (const auto& [source, gs] : baseline.per_source) {
    add("source:" + source, f1_of(gs.score),
        f1_of(candidate.per_source.at(source).score));
  }
  const auto genre_keys = [&baseline]() {
    std::vector<std::string> keys;
    for (const auto& g : baseline.genre_order) {
      if (baseline.per_genre.count(g)) keys.push_back(g);
    }
    for (const auto& [g, unused] : baseline.per_genre) {
      if (std::find(keys.begin(), keys.end(), g) == keys.end()) {
        keys.push_back(g);
      }
    }
    return keys;
  }();
  for (const auto& g : genre_keys) {
    add("genre:" + g, f1_of(baseline.per_genre.at(g).score),
        f1_of(candidate.per_genre.at(g).score));
  }
  return out;
}

std::string to_json(const ScoreReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "score_report";
  j["overall"] = {{"counts", counts_json(r.overall)},
                  {"gold_mentions", r.gold_mentions},
                  {"prf", prf_json(r.overall_prf)}};
  j["macro_f1"] = r.macro_f1 ? json(*r.macro_f1) : json(nullptr);

  json types = json::object();
  for (const auto& [type, ts] : r.per_type) {
    types[type] = {{"counts", counts_json(ts.counts)},
                   {"gold_mentions", ts.gold_mentions},
                   {"prf", prf_json(ts.score)}};
  }
  j["per_type"] = std::move(types);

  const auto groups_json = [](const std::map<std::string, GroupScore>& m) {
    json out = json::object();
    for (const auto& [name, gs] : m) {
      out[name] = {{"counts", counts_json(gs.counts)},
                   {"gold_mentions", gs.gold_mentions},
                   {"prf", prf_json(gs.score)}};
    }
    return out;
  };
  j["per_source"] = groups_json(r.per_source);
  j["per_genre"] = groups_json(r.per_genre);
  j["genre_order"] = r.genre_order;
  return dump(j);
}

ScoreReport score_report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report JSON: ") + e.what(), 0);
  }
  try {
    if (j.at("kind").get<std::string>() != "score_report") {
      throw ParseError("not a score_report document", 0);
    }
    ScoreReport r;
    r.overall = counts_from(j.at("overall").at("counts"));
    r.gold_mentions = j.at("overall").at("gold_mentions").get<std::int64_t>();
    if (const auto p = prf_from(j.at("overall").at("prf"))) r.overall_prf = *p;
    if (!j.at("macro_f1").is_null()) {
      r.macro_f1 = j.at("macro_f1").get<double>();
    }
    for (const auto& [type, tj] : j.at("per_type").items()) {
      TypeScore ts;
      ts.counts = counts_from(tj.at("counts"));
      ts.gold_mentions = tj.at("gold_mentions").get<std::int64_t>();
      ts.score = prf_from(tj.at("prf"));
      r.per_type.emplace(type, std::move(ts));
    }
    const auto groups_from = [](const json& m) {
      std::map<std::string, GroupScore> out;
      for (const auto& [name, gj] : m.items()) {
        GroupScore gs;
        gs.counts = counts_from(gj.at("counts"));
        gs.gold_mentions = gj.at("gold_mentions").get<std::int64_t>();
        gs.score = prf_from(gj.at("prf"));
        out.emplace(name, std::move(gs));
      }
      return out;
    };
    r.per_source = groups_from(j.at("per_source"));
    r.per_genre = groups_from(j.at("per_genre"));
    for (const auto& g : j.at("genre_order")) {
      r.genre_order.push_back(g.get<std::string>());
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report JSON: ") + e.what(), 0);
  }
}

std::string to_json(const RunSummary& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "run_summary";
  j["n"] = r.n;
  j["mean"] = r.mean;
  j["sample_sd"] = r.sample_sd ? json(*r.sample_sd) : json(nullptr);
  j["min"] = r.min;
  j["max"] = r.max;
  return dump(j);
}

std::string to_json(const TTestResult& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "t_test";
  j["t_statistic"] = r.t_statistic;
  j["degrees_of_freedom"] = r.degrees_of_freedom;
  j["p_two_tailed"] = r.p_two_tailed;
  return dump(j);
}

std::string to_json(const ComparisonTable& t) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "comparison";
  j["baseline_label"] = t.baseline_label;
  j["candidate_label"] = t.candidate_label;
  auto rows = json::array();
  for (const auto& row : t.rows) {
    rows.push_back(
        {{"label", row.label},
         {"baseline", row.baseline ? json(*row.baseline) : json(nullptr)},
         {"candidate", row.candidate ? json(*row.candidate) : json(nullptr)},
         {"delta", row.delta ? json(*row.delta) : json(nullptr)}});
  }
  j["rows"] = std::move(rows);
  return dump(j);
}

std::string to_json(const OverlapStats& o) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "overlap";
  j["entity_type"] = o.entity_type;
  j["test_token_overlap_pct"] = o.test_token_overlap_pct
                                    ? json(*o.test_token_overlap_pct)
                                    : json(nullptr);
  j["train_unique_token_pct"] = o.train_unique_token_pct
                                    ? json(*o.train_unique_token_pct)
                                    : json(nullptr);
  return dump(j);
}

std::string to_markdown(const ScoreReport& r, Layout layout, std::size_t k) {
  return render_markdown(layout_table(r, layout, k));
}

std::string to_markdown(const RunSummary& r) {
  return render_markdown(runs_table(r));
}

std::string to_markdown(const ComparisonTable& t) {
  return render_markdown(comparison_table(t));
}

std::string to_csv(const ScoreReport& r, Layout layout, std::size_t k) {
  return render_csv(layout_table(r, layout, k));
}

std::string to_csv(const RunSummary& r) { return render_csv(runs_table(r)); }

std::string to_csv(const ComparisonTable& t) {
  return render_csv(comparison_table(t));
}

}  // namespace neraudit
