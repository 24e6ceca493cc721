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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "neraudit/corpus.hpp"
#include "neraudit/rng.hpp"

namespace neraudit {

enum class LexKind { kFirst, kLast, kPlace, kSuffix };
enum class Gender { kF, kM, kAny };

struct LexiconEntry {
  std::string surface;  // single token, no whitespace
  LexKind kind = LexKind::kFirst;
  Gender gender = Gender::kAny;
  std::string locale;  // e.g. en_US, en_IN, en_TH, en_IE

  friend auto operator<=>(const LexiconEntry&, const LexiconEntry&) = default;
};

// Name pools indexed by (locale, kind, gender filter). A gender filter of F
// selects entries with gender F or any; likewise for M; the any filter
// selects everything. Bucket order is file order.
class Lexicon {
 public:
  void add(const LexiconEntry& entry);  // exact duplicates are dropped
  std::size_t size() const { return entries_.size(); }

  // Throws LexiconCoverageError naming (locale, kind, gender) when the
  // bucket is empty.
  const std::string& draw(const std::string& locale, LexKind kind,
                          Gender gender, SplitMix64& rng) const;
  bool bucket_empty(const std::string& locale, LexKind kind,
                    Gender gender) const;

 private:
  std::vector<LexiconEntry> entries_;
  // key: locale \x1f kind \x1f filter
  std::map<std::string, std::vector<std::string>> buckets_;
};

// Tab-separated lines "surface<TAB>kind<TAB>gender<TAB>locale". Kind is
// first|last|place|suffix, gender is F|M|any. '#' comments and blank lines
// are skipped; duplicates are dropped.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_text(std::string_view text);
Lexicon load_lexicon_file(const std::string& path);

struct FixedTokenGen {
  std::string token;
};
struct PersonGen {
  std::string locale;
  Gender gender = Gender::kAny;
};
struct GpeGen {
  std::string locale;
};

enum class Consistency {
  kPerSurface,     // identical original surfaces get identical replacements
  kPerOccurrence,  // every occurrence is drawn independently
};

struct PerturbationRule {
  std::string rule_id;
  std::string target_type;  // PER or GPE for the built-ins
  std::variant<FixedTokenGen, PersonGen, GpeGen> generator;
  Consistency consistency = Consistency::kPerSurface;
};

// The six built-in transformations:
//   perturb_1  every PER token becomes "Dodo"
//   perturb_2  PER replaced with en_US person names
//   perturb_3  PER replaced with en_IN person names
//   perturb_4  PER replaced with en_TH female names
//   perturb_5  PER replaced with en_IN female names
//   perturb_6  GPE replaced with en_IE place names
std::vector<PerturbationRule> builtin_rules();
std::optional<PerturbationRule> builtin_rule(std::string_view rule_id);

// JSON rule description: {"rule_id", "target_type", "generator": {"kind":
// "fixed"|"person"|"gpe", "token"?, "locale"?, "gender"?}, "consistency"?}.
PerturbationRule rule_from_json(std::string_view text);

// First token from the (locale, first, gender) bucket, remaining tokens
// independently from (locale, last, gender).
std::vector<std::string> gen_person(const Lexicon& lex,
                                    const std::string& locale, Gender gender,
                                    std::size_t n_tokens, SplitMix64& rng);

// First token from (locale, place), remaining tokens from (locale, suffix).
std::vector<std::string> gen_gpe(const Lexicon& lex, const std::string& locale,
                                 std::size_t n_tokens, SplitMix64& rng);

struct Substitution {
  std::size_t sentence = 0;  // position in the corpus
  std::string doc_id;
  std::int64_t sentence_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> original;
  std::vector<std::string> replacement;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct SubstitutionPlan {
  std::string rule_id;
  std::uint64_t seed = 0;
  std::vector<Substitution> substitutions;

  friend bool operator==(const SubstitutionPlan&,
                         const SubstitutionPlan&) = default;
};

// One length-preserving substitution per mention of the rule's target type,
// in corpus order. A pure function of (corpus, rule, lexicon, seed).
SubstitutionPlan plan(const Corpus& c, const PerturbationRule& rule,
                      const Lexicon& lex, std::uint64_t seed);

// New corpus with exactly the planned surfaces replaced; sentence shapes,
// tags, doc ids, sources and all other tokens are untouched.
Corpus apply(const Corpus& c, const SubstitutionPlan& p);

// Audit manifest for regenerating or reviewing a perturbed test set.
std::string plan_to_json(const SubstitutionPlan& p);

// Fraction of replacement token instances whose surface never occurs as a
// token of `train`. Reported, never enforced.
double novelty_fraction(const SubstitutionPlan& p, const Corpus& train);

}  // namespace neraudit
