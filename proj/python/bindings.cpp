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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neraudit/corpus.hpp"
#include "neraudit/perturb.hpp"
#include "neraudit/report.hpp"
#include "neraudit/rng.hpp"
#include "neraudit/scorer.hpp"
#include "neraudit/spans.hpp"
#include "neraudit/splits.hpp"
#include "neraudit/stats.hpp"
#include "neraudit/version.hpp"

namespace py = pybind11;
using namespace neraudit;

namespace {

GroupBy group_by_from(const std::string& name) {
  if (name == "none") return GroupBy::kNone;
  if (name == "type") return GroupBy::kType;
  if (name == "source") return GroupBy::kSource;
  if (name == "genre") return GroupBy::kGenre;
  throw Error("bad group_by \"" + name + "\" (none|type|source|genre)");
}

Layout layout_from(const std::string& name) {
  if (name == "overall") return Layout::kOverall;
  if (name == "by_type") return Layout::kByType;
  if (name == "by_source") return Layout::kBySource;
  if (name == "by_genre") return Layout::kByGenre;
  if (name == "adversarial") return Layout::kAdversarial;
  if (name == "runs") return Layout::kRuns;
  throw Error("bad layout \"" + name + "\"");
}

Gender gender_from_str(const std::string& name) {
  if (name == "F") return Gender::kF;
  if (name == "M") return Gender::kM;
  if (name == "any") return Gender::kAny;
  throw Error("bad gender \"" + name + "\" (F|M|any)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entity-level NER scoring, adversarial test-set generation and "
            "split auditing for BIO-format corpora";
  m.attr("__version__") = kVersion;
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::register_exception<Error>(m, "ToolkitError", PyExc_RuntimeError);

  py::class_<Token>(m, "Token")
      .def(py::init<>())
      .def(py::init([](std::string surface, std::string tag) {
             return Token{std::move(surface), std::move(tag)};
           }),
           py::arg("surface"), py::arg("tag"))
      .def_readwrite("surface", &Token::surface)
      .def_readwrite("tag", &Token::tag)
      .def(py::self == py::self)
      .def("__repr__", [](const Token& t) {
        return "Token(" + t.surface + ", " + t.tag + ")";
      });

  py::class_<Sentence>(m, "Sentence")
      .def(py::init<>())
      .def_readwrite("tokens", &Sentence::tokens)
      .def_readwrite("doc_id", &Sentence::doc_id)
      .def_readwrite("source", &Sentence::source)
      .def_readwrite("index", &Sentence::index)
      .def("__len__", [](const Sentence& s) { return s.tokens.size(); })
      .def(py::self == py::self);

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_readwrite("sentences", &Corpus::sentences)
      .def("token_count", &Corpus::token_count)
      .def("source_set", &Corpus::source_set)
      .def("__len__", [](const Corpus& c) { return c.size(); })
      .def(py::self == py::self);

  py::enum_<SourcePolicy>(m, "SourcePolicy")
      .value("DOC_ID_PREFIX", SourcePolicy::kDocIdPrefix)
      .value("FIXED", SourcePolicy::kFixed)
      .value("SIDECAR_MAP", SourcePolicy::kSidecarMap);

  py::class_<FormatConfig>(m, "FormatConfig")
      .def(py::init<>())
      .def_readwrite("whitespace_separated", &FormatConfig::whitespace_separated)
      .def_readwrite("separator", &FormatConfig::separator)
      .def_readwrite("write_separator", &FormatConfig::write_separator)
      .def_readwrite("token_column", &FormatConfig::token_column)
      .def_readwrite("tag_column", &FormatConfig::tag_column)
      .def_readwrite("comment_prefix", &FormatConfig::comment_prefix)
      .def_readwrite("docstart_marker", &FormatConfig::docstart_marker)
      .def_readwrite("source_policy", &FormatConfig::source_policy)
      .def_readwrite("fixed_source", &FormatConfig::fixed_source)
      .def_readwrite("source_map", &FormatConfig::source_map);

  py::class_<GenreMap>(m, "GenreMap")
      .def(py::init<>())
      .def_static("default_map", &GenreMap::default_map)
      .def("add", &GenreMap::add)
      .def("contains", &GenreMap::contains)
      .def("genre_of", &GenreMap::genre_of,
           py::return_value_policy::reference_internal)
      .def_property_readonly("genres", &GenreMap::genres);

  m.def("is_valid_bio_tag", &is_valid_bio_tag);
  m.def("parse_conll", &parse_conll_text, py::arg("text"),
        py::arg("config") = FormatConfig());
  m.def("read_conll_file", &read_conll_file, py::arg("path"),
        py::arg("config") = FormatConfig());
  m.def("write_conll", &write_conll_text, py::arg("corpus"),
        py::arg("config") = FormatConfig());
  m.def("write_conll_file", &write_conll_file, py::arg("corpus"),
        py::arg("path"), py::arg("config") = FormatConfig());
  m.def("load_genre_map", [](const std::string& text) {
    std::istringstream in(text);
    return load_genre_map(in);
  });
  m.def("load_genre_map_file", &load_genre_map_file);
  m.def(
      "genre_of",
      [](const std::string& source, const GenreMap& gm) {
        return gm.genre_of(source);
      },
      py::arg("source"), py::arg("genre_map") = GenreMap::default_map());
  m.def(
      "filter_corpus",
      [](const Corpus& c, const std::set<std::string>& selector,
         const std::string& kind, const GenreMap& gm) {
        if (kind != "source" && kind != "genre") {
          throw Error("bad selector kind \"" + kind + "\" (source|genre)");
        }
        return filter_corpus(
            c, selector,
            kind == "source" ? SelectorKind::kSource : SelectorKind::kGenre,
            gm);
      },
      py::arg("corpus"), py::arg("selector"), py::arg("kind"),
      py::arg("genre_map") = GenreMap::default_map());

  py::class_<Mention>(m, "Mention")
      .def(py::init<>())
      .def(py::init([](std::string type, std::size_t start, std::size_t end) {
             return Mention{std::move(type), start, end, {}};
           }),
           py::arg("entity_type"), py::arg("start"), py::arg("end"))
      .def_readwrite("entity_type", &Mention::entity_type)
      .def_readwrite("start", &Mention::start)
      .def_readwrite("end", &Mention::end)
      .def_readwrite("surface", &Mention::surface)
      .def(py::self == py::self)
      .def("__repr__", [](const Mention& mn) {
        return mn.entity_type + "(" + std::to_string(mn.start) + "," +
               std::to_string(mn.end) + ")";
      });

  m.def(
      "decode_mentions",
      [](const std::vector<std::string>& tags, bool strict) {
        return decode_mentions(tags,
                               strict ? BioMode::kStrict : BioMode::kLenient);
      },
      py::arg("tags"), py::arg("strict") = false);
  m.def(
      "decode_sentence_mentions",
      [](const Sentence& s, bool strict) {
        return decode_mentions(s,
                               strict ? BioMode::kStrict : BioMode::kLenient);
      },
      py::arg("sentence"), py::arg("strict") = false);
  m.def(
      "encode_mentions",
      [](const std::vector<Mention>& mentions, std::size_t length) {
        return encode_mentions(mentions, length);
      },
      py::arg("mentions"), py::arg("length"));

  py::class_<Counts>(m, "Counts")
      .def(py::init<>())
      .def_readwrite("tp", &Counts::tp)
      .def_readwrite("fp", &Counts::fp)
      .def_readwrite("fn", &Counts::fn)
      .def("gold", &Counts::gold)
      .def("predicted", &Counts::predicted);

  py::class_<PRF>(m, "PRF")
      .def(py::init<>())
      .def_readwrite("precision", &PRF::precision)
      .def_readwrite("recall", &PRF::recall)
      .def_readwrite("f1", &PRF::f1);

  py::class_<TypeScore>(m, "TypeScore")
      .def_readonly("counts", &TypeScore::counts)
      .def_readonly("score", &TypeScore::score)
      .def_readonly("gold_mentions", &TypeScore::gold_mentions);

  py::class_<GroupScore>(m, "GroupScore")
      .def_readonly("counts", &GroupScore::counts)
      .def_readonly("score", &GroupScore::score)
      .def_readonly("gold_mentions", &GroupScore::gold_mentions);

  py::class_<ScoreReport>(m, "ScoreReport")
      .def_readonly("overall", &ScoreReport::overall)
      .def_readonly("overall_prf", &ScoreReport::overall_prf)
      .def_readonly("gold_mentions", &ScoreReport::gold_mentions)
      .def_readonly("per_type", &ScoreReport::per_type)
      .def_readonly("per_source", &ScoreReport::per_source)
      .def_readonly("per_genre", &ScoreReport::per_genre)
      .def_readonly("macro_f1", &ScoreReport::macro_f1)
      .def("to_json",
           [](const ScoreReport& r) { return to_json(r); });

  m.def(
      "score",
      [](const Corpus& gold, const Corpus& pred, const std::string& group_by,
         const GenreMap& gm, bool check_surfaces, bool strict) {
        ScoreOptions options;
        options.group_by = group_by_from(group_by);
        options.genre_map = gm;
        options.check_surfaces = check_surfaces;
        options.bio_mode = strict ? BioMode::kStrict : BioMode::kLenient;
        return score(gold, pred, options);
      },
      py::arg("gold"), py::arg("pred"), py::arg("group_by") = "none",
      py::arg("genre_map") = GenreMap::default_map(),
      py::arg("check_surfaces") = false, py::arg("strict") = false);

  py::class_<RankedType>(m, "RankedType")
      .def_readonly("type", &RankedType::type)
      .def_readonly("gold_mentions", &RankedType::gold_mentions)
      .def_readonly("score", &RankedType::score);

  py::class_<TypeRanking>(m, "TypeRanking")
      .def_readonly("most_frequent", &TypeRanking::most_frequent)
      .def_readonly("least_frequent", &TypeRanking::least_frequent);

  m.def("rank_types", &rank_types, py::arg("report"), py::arg("k"));

  py::class_<Lexicon>(m, "Lexicon")
      .def(py::init<>())
      .def("__len__", [](const Lexicon& lex) { return lex.size(); });
  m.def("load_lexicon", &load_lexicon_text, py::arg("text"));
  m.def("load_lexicon_file", &load_lexicon_file, py::arg("path"));

  py::class_<PerturbationRule>(m, "PerturbationRule")
      .def_readonly("rule_id", &PerturbationRule::rule_id)
      .def_readonly("target_type", &PerturbationRule::target_type)
      .def("__repr__", [](const PerturbationRule& r) {
        return "PerturbationRule(" + r.rule_id + " on " + r.target_type + ")";
      });

  m.def("builtin_rules", &builtin_rules);
  m.def("builtin_rule", [](const std::string& rule_id) {
    return builtin_rule(rule_id);
  });
  m.def("rule_from_json",
        [](const std::string& text) { return rule_from_json(text); });
  m.def(
      "make_rule",
      [](const std::string& rule_id, const std::string& target_type,
         const std::string& kind, const std::string& token,
         const std::string& locale, const std::string& gender,
         const std::string& consistency) {
        PerturbationRule rule;
        rule.rule_id = rule_id;
        rule.target_type = target_type;
        if (kind == "fixed") {
          rule.generator = FixedTokenGen{token};
        } else if (kind == "person") {
          rule.generator = PersonGen{locale, gender_from_str(gender)};
        } else if (kind == "gpe") {
          rule.generator = GpeGen{locale};
        } else {
          throw Error("bad generator kind \"" + kind + "\"");
        }
        rule.consistency = consistency == "occurrence"
                               ? Consistency::kPerOccurrence
                               : Consistency::kPerSurface;
        return rule;
      },
      py::arg("rule_id"), py::arg("target_type"), py::arg("kind"),
      py::arg("token") = "", py::arg("locale") = "", py::arg("gender") = "any",
      py::arg("consistency") = "surface");

  py::class_<Substitution>(m, "Substitution")
      .def_readonly("sentence", &Substitution::sentence)
      .def_readonly("doc_id", &Substitution::doc_id)
      .def_readonly("sentence_index", &Substitution::sentence_index)
      .def_readonly("start", &Substitution::start)
      .def_readonly("end", &Substitution::end)
      .def_readonly("original", &Substitution::original)
      .def_readonly("replacement", &Substitution::replacement);

  py::class_<SubstitutionPlan>(m, "SubstitutionPlan")
      .def_readonly("rule_id", &SubstitutionPlan::rule_id)
      .def_readonly("seed", &SubstitutionPlan::seed)
      .def_readonly("substitutions", &SubstitutionPlan::substitutions)
      .def("to_json",
           [](const SubstitutionPlan& p) { return plan_to_json(p); });

  m.def("plan", &plan, py::arg("corpus"), py::arg("rule"), py::arg("lexicon"),
        py::arg("seed"));
  m.def("apply", &apply, py::arg("corpus"), py::arg("plan"));
  m.def("novelty_fraction", &novelty_fraction, py::arg("plan"),
        py::arg("train"));

  py::class_<SplitTriple>(m, "SplitTriple")
      .def_readonly("train", &SplitTriple::train)
      .def_readonly("dev", &SplitTriple::dev)
      .def_readonly("test", &SplitTriple::test);

  m.def(
      "random_split",
      [](const Corpus& c, std::tuple<double, double, double> p,
         std::uint64_t seed) {
        return random_split(
            c, Proportions{std::get<0>(p), std::get<1>(p), std::get<2>(p)},
            seed);
      },
      py::arg("corpus"), py::arg("proportions"), py::arg("seed"));
  m.def(
      "generate_splits",
      [](const Corpus& c, std::tuple<double, double, double> p,
         std::uint64_t seed, std::size_t n_splits) {
        return generate_splits(
            c, SplitSpec{
                   Proportions{std::get<0>(p), std::get<1>(p), std::get<2>(p)},
                   seed, n_splits});
      },
      py::arg("corpus"), py::arg("proportions"), py::arg("seed"),
      py::arg("n_splits"));
  m.def("derive_seed", &derive_seed, py::arg("seed"), py::arg("index"));

  py::class_<CrossGenreSets>(m, "CrossGenreSets")
      .def_readonly("train", &CrossGenreSets::train)
      .def_readonly("dev", &CrossGenreSets::dev)
      .def_readonly("test_by_genre", &CrossGenreSets::test_by_genre);

  m.def(
      "cross_genre_sets",
      [](const Corpus& train, const Corpus& dev, const Corpus& test,
         const std::string& mode, const std::string& genre,
         std::optional<std::string> dev_genre, const GenreMap& gm) {
        if (mode != "single" && mode != "loo") {
          throw Error("bad mode \"" + mode + "\" (single|loo)");
        }
        return cross_genre_sets(train, dev, test, gm,
                                mode == "single" ? CrossGenreMode::kSingle
                                                 : CrossGenreMode::kLeaveOneOut,
                                genre, std::move(dev_genre));
      },
      py::arg("train"), py::arg("dev"), py::arg("test"), py::arg("mode"),
      py::arg("genre"), py::arg("dev_genre") = std::nullopt,
      py::arg("genre_map") = GenreMap::default_map());

  py::class_<OverlapStats>(m, "OverlapStats")
      .def_readonly("entity_type", &OverlapStats::entity_type)
      .def_readonly("test_token_overlap_pct",
                    &OverlapStats::test_token_overlap_pct)
      .def_readonly("train_unique_token_pct",
                    &OverlapStats::train_unique_token_pct)
      .def("to_json", [](const OverlapStats& o) { return to_json(o); });

  m.def("overlap_stats", &overlap_stats, py::arg("train"), py::arg("test"),
        py::arg("entity_type"));

  py::class_<RunSummary>(m, "RunSummary")
      .def_readonly("n", &RunSummary::n)
      .def_readonly("mean", &RunSummary::mean)
      .def_readonly("sample_sd", &RunSummary::sample_sd)
      .def_readonly("min", &RunSummary::min)
      .def_readonly("max", &RunSummary::max)
      .def("to_json", [](const RunSummary& r) { return to_json(r); });

  py::class_<TTestResult>(m, "TTestResult")
      .def_readonly("t_statistic", &TTestResult::t_statistic)
      .def_readonly("degrees_of_freedom", &TTestResult::degrees_of_freedom)
      .def_readonly("p_two_tailed", &TTestResult::p_two_tailed)
      .def("to_json", [](const TTestResult& r) { return to_json(r); });

  m.def("aggregate", [](const std::vector<double>& values) {
    return aggregate(values);
  });
  m.def(
      "paired_t_test",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return paired_t_test(a, b);
      },
      py::arg("a"), py::arg("b"));
  m.def("delta", &delta, py::arg("reported"), py::arg("obtained"));
  m.def("student_t_cdf", &student_t_cdf, py::arg("t"), py::arg("df"));

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("label", &ComparisonRow::label)
      .def_readonly("baseline", &ComparisonRow::baseline)
      .def_readonly("candidate", &ComparisonRow::candidate)
      .def_readonly("delta", &ComparisonRow::delta);

  py::class_<ComparisonTable>(m, "ComparisonTable")
      .def_readonly("baseline_label", &ComparisonTable::baseline_label)
      .def_readonly("candidate_label", &ComparisonTable::candidate_label)
      .def_readonly("rows", &ComparisonTable::rows)
      .def("to_json", [](const ComparisonTable& t) { return to_json(t); })
      .def("to_markdown",
           [](const ComparisonTable& t) { return to_markdown(t); });

  m.def("compare", &compare, py::arg("baseline"), py::arg("candidate"),
        py::arg("candidate_label") = "candidate");
  m.def("score_report_from_json", [](const std::string& text) {
    return score_report_from_json(text);
  });
  m.def(
      "to_markdown",
      [](const ScoreReport& r, const std::string& layout, std::size_t k) {
        return to_markdown(r, layout_from(layout), k);
      },
      py::arg("report"), py::arg("layout") = "overall", py::arg("k") = 4);
  m.def("runs_markdown", [](const RunSummary& r) { return to_markdown(r); });
  m.def(
      "to_csv",
      [](const ScoreReport& r, const std::string& layout, std::size_t k) {
        return to_csv(r, layout_from(layout), k);
      },
      py::arg("report"), py::arg("layout") = "overall", py::arg("k") = 4);
}
