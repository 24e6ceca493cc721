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

#include "neraudit/perturb.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "neraudit/spans.hpp"
#include "neraudit/version.hpp"

namespace neraudit {

namespace {

const char* kind_name(LexKind kind) {
  switch (kind) {
    case LexKind::kFirst: return "first";
    case LexKind::kLast: return "last";
    case LexKind::kPlace: return "place";
    case LexKind::kSuffix: return "suffix";
  }
  return "?";
}

const char* gender_name(Gender g) {
  switch (g) {
    case Gender::kF: return "F";
    case Gender::kM: return "M";
    case Gender::kAny: return "any";
  }
  return "?";
}

std::optional<LexKind> kind_from(std::string_view s) {
  if (s == "first") return LexKind::kFirst;
  if (s == "last") return LexKind::kLast;
  if (s == "place") return LexKind::kPlace;
  if (s == "suffix") return LexKind::kSuffix;
  return std::nullopt;
}

std::optional<Gender> gender_from(std::string_view s) {
  if (s == "F") return Gender::kF;
  if (s == "M") return Gender::kM;
  if (s == "any") return Gender::kAny;
  return std::nullopt;
}

std::string bucket_key(const std::string& locale, LexKind kind,
                       Gender filter) {
  std::string key = locale;
  key += '\x1f';
  key += kind_name(kind);
  key += '\x1f';
  key += gender_name(filter);
  return key;
}

}  // namespace

void Lexicon::add(const LexiconEntry& entry) {
  if (std::find(entries_.begin(), entries_.end(), entry) != entries_.end()) {
    return;
  }
  entries_.push_back(entry);
  const auto push = [this, &entry](Gender filter) {
    buckets_[bucket_key(entry.locale, entry.kind, filter)].push_back(
        entry.surface);
  };
  // An entry is visible to its own gender's filter and to the any filter;
  // any-gender entries are visible to all three.
  push(Gender::kAny);
  if (entry.gender == Gender::kAny) {
    push(Gender::kF);
    push(Gender::kM);
  } else {
    push(entry.gender);
  }
}

bool Lexicon::bucket_empty(const std::string& locale, LexKind kind,
                           Gender gender) const {
  const auto it = buckets_.find(bucket_key(locale, kind, gender));
  return it == buckets_.end() || it->second.empty();
}

const std::string& Lexicon::draw(const std::string& locale, LexKind kind,
                                 Gender gender, SplitMix64& rng) const {
  const auto it = buckets_.find(bucket_key(locale, kind, gender));
  if (it == buckets_.end() || it->second.empty()) {
    throw LexiconCoverageError(std::string("empty lexicon bucket (locale=") +
                               locale + ", kind=" + kind_name(kind) +
                               ", gender=" + gender_name(gender) + ")");
  }
  return it->second[rng.bounded(it->second.size())];
}

Lexicon load_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() ||
        line.find_first_not_of(" \t") == std::string::npos ||
        line[0] == '#') {
      continue;
    }
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cols.size() != 4) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected surface<TAB>kind<TAB>gender<TAB>locale",
                       line_no);
    }
    LexiconEntry entry;
    entry.surface = cols[0];
    if (entry.surface.empty() ||
        entry.surface.find_first_of(" \t\v\f\r\n") != std::string::npos) {
      throw ParseError(
          "line " + std::to_string(line_no) + ": bad surface \"" + cols[0] +
              "\"",
          line_no);
    }
    const auto kind = kind_from(cols[1]);
    if (!kind) {
      throw ParseError("line " + std::to_string(line_no) + ": bad kind \"" +
                           cols[1] + "\" (expected first|last|place|suffix)",
                       line_no);
    }
    const auto gender = gender_from(cols[2]);
    if (!gender) {
      throw ParseError("line " + std::to_string(line_no) + ": bad gender \"" +
                           cols[2] + "\" (expected F|M|any)",
                       line_no);
    }
    if (cols[3].empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty locale",
                       line_no);
    }
    entry.kind = *kind;
    entry.gender = *gender;
    entry.locale = cols[3];
    lex.add(entry);
  }
  return lex;
}

Lexicon load_lexicon_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_lexicon(in);
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  return load_lexicon(in);
}

std::vector<PerturbationRule> builtin_rules() {
  return {
      {"perturb_1", "PER", FixedTokenGen{"Dodo"}, Consistency::kPerSurface},
      {"perturb_2", "PER", PersonGen{"en_US", Gender::kAny},
       Consistency::kPerSurface},
      {"perturb_3", "PER", PersonGen{"en_IN", Gender::kAny},
       Consistency::kPerSurface},
      {"perturb_4", "PER", PersonGen{"en_TH", Gender::kF},
       Consistency::kPerSurface},
      {"perturb_5", "PER", PersonGen{"en_IN", Gender::kF},
       Consistency::kPerSurface},
      {"perturb_6", "GPE", GpeGen{"en_IE"}, Consistency::kPerSurface},
  };
}

std::optional<PerturbationRule> builtin_rule(std::string_view rule_id) {
  for (auto& rule : builtin_rules()) {
    if (rule.rule_id == rule_id) return rule;
  }
  return std::nullopt;
}

PerturbationRule rule_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad rule JSON: ") + e.what(), 0);
  }
  try {
    PerturbationRule rule;
    rule.rule_id = j.at("rule_id").get<std::string>();
    rule.target_type = j.at("target_type").get<std::string>();
    const auto& gen = j.at("generator");
    const auto kind = gen.at("kind").get<std::string>();
    if (kind == "fixed") {
      rule.generator = FixedTokenGen{gen.at("token").get<std::string>()};
    } else if (kind == "person") {
      PersonGen pg;
      pg.locale = gen.at("locale").get<std::string>();
      if (gen.contains("gender")) {
        const auto g = gender_from(gen.at("gender").get<std::string>());
        if (!g) throw ParseError("bad gender in rule JSON", 0);
        pg.gender = *g;
      }
      rule.generator = pg;
    } else if (kind == "gpe") {
      rule.generator = GpeGen{gen.at("locale").get<std::string>()};
    } else {
      throw ParseError("bad generator kind \"" + kind +
                           "\" (expected fixed|person|gpe)",
                       0);
    }
    if (j.contains("consistency")) {
      const auto c = j.at("consistency").get<std::string>();
      if (c == "surface") {
        rule.consistency = Consistency::kPerSurface;
      } else if (c == "occurrence") {
        rule.consistency = Consistency::kPerOccurrence;
      } else {
        throw ParseError(
            "bad consistency \"" + c + "\" (expected surface|occurrence)", 0);
      }
    }
    if (rule.rule_id.empty() || rule.target_type.empty()) {
      throw ParseError("rule_id and target_type must be non-empty", 0);
    }
    return rule;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad rule JSON: ") + e.what(), 0);
  }
}

std::vector<std::string> gen_person(const Lexicon& lex,
                                    const std::string& locale, Gender gender,
                                    std::size_t n_tokens, SplitMix64& rng) {
  std::vector<std::string> out;
  out.reserve(n_tokens);
  out.push_back(lex.draw(locale, LexKind::kFirst, gender, rng));
  for (std::size_t i = 1; i < n_tokens; ++i) {
    out.push_back(lex.draw(locale, LexKind::kLast, gender, rng));
  }
  return out;
}

std::vector<std::string> gen_gpe(const Lexicon& lex, const std::string& locale,
                                 std::size_t n_tokens, SplitMix64& rng) {
  std::vector<std::string> out;
  out.reserve(n_tokens);
  out.push_back(lex.draw(locale, LexKind::kPlace, Gender::kAny, rng));
  for (std::size_t i = 1; i < n_tokens; ++i) {
    out.push_back(lex.draw(locale, LexKind::kSuffix, Gender::kAny, rng));
  }
  return out;
}

SubstitutionPlan plan(const Corpus& c, const PerturbationRule& rule,
                      const Lexicon& lex, std::uint64_t seed) {
  SubstitutionPlan out;
  out.rule_id = rule.rule_id;
  out.seed = seed;

  SplitMix64 rng(seed);
  std::map<std::vector<std::string>, std::vector<std::string>> by_surface;

  const auto generate = [&](std::size_t n) -> std::vector<std::string> {
    if (const auto* fixed = std::get_if<FixedTokenGen>(&rule.generator)) {
      return std::vector<std::string>(n, fixed->token);
    }
    if (const auto* person = std::get_if<PersonGen>(&rule.generator)) {
      return gen_person(lex, person->locale, person->gender, n, rng);
    }
    const auto& gpe = std::get<GpeGen>(rule.generator);
    return gen_gpe(lex, gpe.locale, n, rng);
  };

  for (std::size_t i = 0; i < c.sentences.size(); ++i) {
    const auto& sentence = c.sentences[i];
    for (const auto& m : decode_mentions(sentence)) {
      if (m.entity_type != rule.target_type) continue;
      std::vector<std::string> replacement;
      if (rule.consistency == Consistency::kPerSurface) {
        const auto it = by_surface.find(m.surface);
        if (it != by_surface.end()) {
          replacement = it->second;
        } else {
          replacement = generate(m.length());
          by_surface.emplace(m.surface, replacement);
        }
      } else {
        replacement = generate(m.length());
      }
      out.substitutions.push_back(Substitution{
          i, sentence.doc_id, sentence.index, m.start, m.end, m.surface,
          std::move(replacement)});
    }
  }
  return out;
}

Corpus apply(const Corpus& c, const SubstitutionPlan& p) {
  Corpus out = c;
  std::size_t prev_sentence = 0;
  std::size_t prev_end = 0;
  bool first = true;
  for (const auto& s : p.substitutions) {
    if (s.sentence >= out.sentences.size()) {
      throw AlignmentError("plan names sentence " + std::to_string(s.sentence) +
                           " but the corpus has " +
                           std::to_string(out.sentences.size()));
    }
    auto& tokens = out.sentences[s.sentence].tokens;
    if (s.start >= s.end || s.end > tokens.size()) {
      throw AlignmentError("plan range [" + std::to_string(s.start) + ", " +
                           std::to_string(s.end) +
                           ") is invalid for sentence " +
                           std::to_string(s.sentence) + " of length " +
                           std::to_string(tokens.size()));
    }
    if (s.replacement.size() != s.end - s.start) {
      throw AlignmentError("replacement length " +
                           std::to_string(s.replacement.size()) +
                           " does not match range [" + std::to_string(s.start) +
                           ", " + std::to_string(s.end) + ")");
    }
    if (!first && (s.sentence < prev_sentence ||
                   (s.sentence == prev_sentence && s.start < prev_end))) {
      throw AlignmentError(
          "plan entries overlap or are out of corpus order at sentence " +
          std::to_string(s.sentence));
    }
    if (!s.original.empty()) {
      for (std::size_t k = 0; k < s.original.size(); ++k) {
        if (tokens[s.start + k].surface != s.original[k]) {
          throw AlignmentError(
              "plan does not match corpus at sentence " +
              std::to_string(s.sentence) + ", token " +
              std::to_string(s.start + k) + " (expected \"" + s.original[k] +
              "\", found \"" + tokens[s.start + k].surface + "\")");
        }
      }
    }
    for (std::size_t k = 0; k < s.replacement.size(); ++k) {
      tokens[s.start + k].surface = s.replacement[k];
    }
    prev_sentence = s.sentence;
    prev_end = s.end;
    first = false;
  }
  return out;
}

std::string plan_to_json(const SubstitutionPlan& p) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "substitution_plan";
  j["rule_id"] = p.rule_id;
  j["seed"] = p.seed;
  j["toolkit_version"] = kVersion;
  auto subs = nlohmann::json::array();
  for (const auto& s : p.substitutions) {
    subs.push_back({{"sentence", s.sentence},
                    {"doc_id", s.doc_id},
                    {"sentence_index", s.sentence_index},
                    {"start", s.start},
                    {"end", s.end},
                    {"original", s.original},
                    {"replacement", s.replacement}});
  }
  j["substitutions"] = std::move(subs);
  return j.dump(2) + "\n";
}

double novelty_fraction(const SubstitutionPlan& p, const Corpus& train) {
  std::unordered_set<std::string> seen;
  for (const auto& s : train.sentences) {
    for (const auto& t : s.tokens) seen.insert(t.surface);
  }
  std::size_t total = 0;
  std::size_t unseen = 0;
  for (const auto& s : p.substitutions) {
    for (const auto& token : s.replacement) {
      ++total;
      if (!seen.count(token)) ++unseen;
    }
  }
  return total == 0 ? 0.0
                    : static_cast<double>(unseen) / static_cast<double>(total);
}

}  // namespace neraudit
