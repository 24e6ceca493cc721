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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "neraudit/corpus.hpp"
#include "neraudit/perturb.hpp"
#include "neraudit/report.hpp"
#include "neraudit/scorer.hpp"
#include "neraudit/splits.hpp"
#include "neraudit/stats.hpp"
#include "neraudit/version.hpp"

namespace {

using namespace neraudit;

// Exit codes: 0 success, 1 evaluation/validation failure, 2 usage or I/O.
constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageOrIo = 2;

// Shared corpus-format flags for every subcommand that reads CoNLL files.
struct FormatFlags {
  std::string sep = "ws";
  std::size_t token_col = 0;
  std::string tag_col = "last";
  std::string comment;
  std::string docstart = "-DOCSTART-";
  std::string source = "prefix";
};

void add_format_flags(CLI::App* cmd, FormatFlags& flags) {
  cmd->add_option("--sep", flags.sep,
                  "Column separator: ws (any whitespace), space, or tab")
      ->check(CLI::IsMember({"ws", "space", "tab"}))
      ->capture_default_str();
  cmd->add_option("--token-col", flags.token_col, "Token column (0-based)")
      ->capture_default_str();
  cmd->add_option("--tag-col", flags.tag_col,
                  "Tag column (0-based index or \"last\")")
      ->capture_default_str();
  cmd->add_option("--comment", flags.comment,
                  "Prefix of comment lines to skip (disabled when empty)");
  cmd->add_option("--docstart", flags.docstart, "Document-start marker")
      ->capture_default_str();
  cmd->add_option(
         "--source", flags.source,
         "Source inference: prefix (doc id up to first '/'), fixed:<label>, "
         "or map:<file> (lines of doc_id<TAB>source)")
      ->capture_default_str();
}

FormatConfig to_config(const FormatFlags& flags) {
  FormatConfig cfg;
  if (flags.sep == "tab") {
    cfg.whitespace_separated = false;
    cfg.separator = '\t';
    cfg.write_separator = '\t';
  } else if (flags.sep == "space") {
    cfg.whitespace_separated = false;
    cfg.separator = ' ';
    cfg.write_separator = ' ';
  }
  cfg.token_column = flags.token_col;
  if (flags.tag_col != "last") {
    try {
      cfg.tag_column = std::stoul(flags.tag_col);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--tag-col",
                                 "expected a 0-based index or \"last\"");
    }
  }
  cfg.comment_prefix = flags.comment;
  cfg.docstart_marker = flags.docstart;
  if (flags.source == "prefix") {
    cfg.source_policy = SourcePolicy::kDocIdPrefix;
  } else if (flags.source.rfind("fixed:", 0) == 0) {
    cfg.source_policy = SourcePolicy::kFixed;
    cfg.fixed_source = flags.source.substr(6);
    if (cfg.fixed_source.empty()) {
      throw CLI::ValidationError("--source", "fixed:<label> needs a label");
    }
  } else if (flags.source.rfind("map:", 0) == 0) {
    cfg.source_policy = SourcePolicy::kSidecarMap;
    cfg.source_map = load_source_map_file(flags.source.substr(4));
  } else {
    throw CLI::ValidationError("--source",
                               "expected prefix, fixed:<label> or map:<file>");
  }
  return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open file for writing: " + out_path);
  out << text;
  if (!out) throw IoError("write failed: " + out_path);
}

std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(line, &used);
      while (used < line.size() &&
             (line[used] == ' ' || line[used] == '\t')) {
        ++used;
      }
      if (used != line.size()) throw std::invalid_argument("trailing text");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                           ": expected one number, got \"" + line + "\"",
                       line_no);
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GenreMap genre_map_from_flag(const std::string& path) {
  return path.empty() ? GenreMap::default_map() : load_genre_map_file(path);
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string gold, pred, group_by = "none", genre_map, out;
  FormatFlags fmt;
  bool md = false, json = false, check_surfaces = false, strict_bio = false;
  std::size_t k = 4;
};

int run_score(const ScoreArgs& a) {
  const FormatConfig cfg = to_config(a.fmt);
  const Corpus gold = read_conll_file(a.gold, cfg);
  const Corpus pred = read_conll_file(a.pred, cfg);

  ScoreOptions options;
  options.check_surfaces = a.check_surfaces;
  options.bio_mode = a.strict_bio ? BioMode::kStrict : BioMode::kLenient;
  options.genre_map = genre_map_from_flag(a.genre_map);
  if (a.group_by == "source") {
    options.group_by = GroupBy::kSource;
  } else if (a.group_by == "genre") {
    options.group_by = GroupBy::kGenre;
  } else if (a.group_by == "type") {
    options.group_by = GroupBy::kType;
  }

  const ScoreReport report = score(gold, pred, options);

  char line[64];
  std::snprintf(line, sizeof line, "overall f1 %.4f", report.overall_prf.f1);
  std::cerr << line << "\n";

  if (a.md) {
    Layout layout = Layout::kOverall;
    if (a.group_by == "type") layout = Layout::kByType;
    if (a.group_by == "source") layout = Layout::kBySource;
    if (a.group_by == "genre") layout = Layout::kByGenre;
    emit(to_markdown(report, layout, a.k), a.out);
  } else {
    emit(to_json(report), a.out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// perturb

struct PerturbArgs {
  std::string in, rule, lexicon, out, manifest, consistency = "surface";
  std::string novelty_ref;
  FormatFlags fmt;
  std::uint64_t seed = 0;
};

int run_perturb(const PerturbArgs& a) {
  const FormatConfig cfg = to_config(a.fmt);
  const Corpus corpus = read_conll_file(a.in, cfg);

  PerturbationRule rule;
  if (auto builtin = builtin_rule(a.rule)) {
    rule = *builtin;
  } else {
    rule = rule_from_json(read_text_file(a.rule));
  }
  rule.consistency = a.consistency == "occurrence" ? Consistency::kPerOccurrence
                                                   : Consistency::kPerSurface;

  Lexicon lex;
  if (!a.lexicon.empty()) lex = load_lexicon_file(a.lexicon);

  const SubstitutionPlan p = plan(corpus, rule, lex, a.seed);
  const Corpus perturbed = apply(corpus, p);
  write_conll_file(perturbed, a.out, cfg);

  std::cerr << "substituted " << p.substitutions.size() << " mention(s) with "
            << rule.rule_id << "\n";
  if (!a.novelty_ref.empty()) {
    const Corpus train = read_conll_file(a.novelty_ref, cfg);
    char line[64];
    std::snprintf(line, sizeof line, "novelty fraction %.4f",
                  novelty_fraction(p, train));
    std::cerr << line << "\n";
  }
  if (!a.manifest.empty()) emit(plan_to_json(p), a.manifest);
  return kOk;
}

// ---------------------------------------------------------------------------
// split

struct SplitArgs {
  std::string in, proportions, out_dir, genre_map;
  std::string ref_train, ref_dev, ref_test;
  FormatFlags fmt;
  std::uint64_t seed = 0;
  std::size_t n = 1;
  bool stratify = false;
  bool by_document = false;
};

Proportions parse_proportions(const std::string& text) {
  Proportions p;
  double* fields[3] = {&p.train, &p.dev, &p.test};
  std::istringstream in(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i >= 3) throw Error("expected three comma-separated proportions");
    try {
      *fields[i++] = std::stod(item);
    } catch (const std::exception&) {
      throw Error("bad proportion \"" + item + "\"");
    }
  }
  if (i != 3) throw Error("expected three comma-separated proportions");
  p.validate();
  return p;
}

int run_split(const SplitArgs& a) {
  if (a.by_document) {
    std::cerr << "document-level splitting is not implemented; splits are "
                 "drawn at the sentence level\n";
    return kUsageOrIo;
  }
  const FormatConfig cfg = to_config(a.fmt);
  const Corpus corpus = read_conll_file(a.in, cfg);

  Proportions p;
  if (!a.proportions.empty()) {
    p = parse_proportions(a.proportions);
  } else if (!a.ref_train.empty() || !a.ref_dev.empty() ||
             !a.ref_test.empty()) {
    if (a.ref_train.empty() || a.ref_dev.empty() || a.ref_test.empty()) {
      throw Error("--ref-train/--ref-dev/--ref-test must be given together");
    }
    const double nt = static_cast<double>(read_conll_file(a.ref_train, cfg).size());
    const double nd = static_cast<double>(read_conll_file(a.ref_dev, cfg).size());
    const double ns = static_cast<double>(read_conll_file(a.ref_test, cfg).size());
    const double total = nt + nd + ns;
    if (total == 0.0) throw Error("reference split is empty");
    p = Proportions{nt / total, nd / total, ns / total};
  } else {
    throw Error(
        "no proportions given: pass --proportions a,b,c or a reference split "
        "via --ref-train/--ref-dev/--ref-test");
  }

  SplitSpec spec{p, a.seed, a.n};
  write_split_files(corpus, spec, a.out_dir, cfg, a.stratify,
                    genre_map_from_flag(a.genre_map));
  std::cerr << "wrote " << a.n << " split(s) to " << a.out_dir << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// cross-genre

struct CrossGenreArgs {
  std::string train, dev, test, mode, dev_genre, genre_map, out_dir;
  FormatFlags fmt;
};

int run_cross_genre(const CrossGenreArgs& a) {
  const FormatConfig cfg = to_config(a.fmt);
  CrossGenreMode mode;
  std::string genre;
  if (a.mode.rfind("single:", 0) == 0) {
    mode = CrossGenreMode::kSingle;
    genre = a.mode.substr(7);
  } else if (a.mode.rfind("loo:", 0) == 0) {
    mode = CrossGenreMode::kLeaveOneOut;
    genre = a.mode.substr(4);
  } else {
    throw Error("bad --mode \"" + a.mode + "\" (expected single:G or loo:G)");
  }
  if (genre.empty()) throw Error("--mode needs a genre after the colon");

  const GenreMap gm = genre_map_from_flag(a.genre_map);
  const CrossGenreSets sets = cross_genre_sets(
      read_conll_file(a.train, cfg), read_conll_file(a.dev, cfg),
      read_conll_file(a.test, cfg), gm, mode, genre,
      a.dev_genre.empty() ? std::nullopt
                          : std::optional<std::string>(a.dev_genre));

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + a.out_dir);
  const fs::path dir(a.out_dir);
  write_conll_file(sets.train, (dir / "train.conll").string(), cfg);
  write_conll_file(sets.dev, (dir / "dev.conll").string(), cfg);
  for (const auto& [g, c] : sets.test_by_genre) {
    write_conll_file(c, (dir / ("test_" + g + ".conll")).string(), cfg);
  }
  std::cerr << "wrote train (" << sets.train.size() << "), dev ("
            << sets.dev.size() << ") and " << sets.test_by_genre.size()
            << " genre test set(s) to " << a.out_dir << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// overlap / aggregate / ttest / compare

struct OverlapArgs {
  std::string train, test, type, out;
  FormatFlags fmt;
};

int run_overlap(const OverlapArgs& a) {
  const FormatConfig cfg = to_config(a.fmt);
  const OverlapStats stats = overlap_stats(read_conll_file(a.train, cfg),
                                           read_conll_file(a.test, cfg), a.type);
  emit(to_json(stats), a.out);
  return kOk;
}

struct AggregateArgs {
  std::string values, out;
  bool md = false;
};

int run_aggregate(const AggregateArgs& a) {
  const auto values = read_values_file(a.values);
  const RunSummary summary = aggregate(values);
  emit(a.md ? to_markdown(summary) : to_json(summary), a.out);
  return kOk;
}

struct TTestArgs {
  std::string a_file, b_file, out;
};

int run_ttest(const TTestArgs& a) {
  const TTestResult result =
      paired_t_test(read_values_file(a.a_file), read_values_file(a.b_file));
  emit(to_json(result), a.out);
  return kOk;
}

struct CompareArgs {
  std::string baseline, candidate, label = "candidate", out;
  bool md = false;
};

int run_compare(const CompareArgs& a) {
  const ScoreReport baseline =
      score_report_from_json(read_text_file(a.baseline));
  const ScoreReport candidate =
      score_report_from_json(read_text_file(a.candidate));
  const ComparisonTable table = compare(baseline, candidate, a.label);
  emit(a.md ? to_markdown(table) : to_json(table), a.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity-level NER scoring, adversarial test-set generation and "
               "split auditing for BIO-format corpora"};
  app.set_version_flag("--version", std::string("neraudit ") + kVersion +
                                        " (schema " + kSchemaVersion + ")");
  app.require_subcommand(1);

  ScoreArgs score_args;
  auto* score_cmd =
      app.add_subcommand("score", "Entity-level micro P/R/F1 of pred vs gold");
  score_cmd->add_option("--gold", score_args.gold, "Gold CoNLL file")
      ->required();
  score_cmd->add_option("--pred", score_args.pred, "Predicted CoNLL file")
      ->required();
  score_cmd
      ->add_option("--group-by", score_args.group_by,
                   "Extra grouping: none, type, source or genre")
      ->check(CLI::IsMember({"none", "type", "source", "genre"}))
      ->capture_default_str();
  score_cmd->add_option("--genre-map", score_args.genre_map,
                        "Genre map file (lines of source<TAB>genre)");
  score_cmd->add_option("--k", score_args.k,
                        "Types in each most/least-frequent block (--md)")
      ->capture_default_str();
  score_cmd->add_flag("--check-surfaces", score_args.check_surfaces,
                      "Require identical token surfaces");
  score_cmd->add_flag("--strict-bio", score_args.strict_bio,
                      "Reject dangling I- tags instead of repairing them");
  auto* score_json = score_cmd->add_flag("--json", score_args.json,
                                         "Write the JSON report (default)");
  score_cmd->add_flag("--md", score_args.md, "Write a Markdown table")
      ->excludes(score_json);
  score_cmd->add_option("--out", score_args.out, "Output file (default stdout)");
  add_format_flags(score_cmd, score_args.fmt);

  PerturbArgs perturb_args;
  auto* perturb_cmd = app.add_subcommand(
      "perturb", "Generate an adversarial test set by entity substitution");
  perturb_cmd->add_option("--in", perturb_args.in, "Input CoNLL file")
      ->required();
  perturb_cmd
      ->add_option("--rule", perturb_args.rule,
                   "perturb_1..perturb_6 or a JSON rule file")
      ->required();
  perturb_cmd->add_option("--lexicon", perturb_args.lexicon,
                          "Lexicon TSV (surface, kind, gender, locale)");
  perturb_cmd->add_option("--seed", perturb_args.seed, "Generator seed")
      ->capture_default_str();
  perturb_cmd
      ->add_option("--consistency", perturb_args.consistency,
                   "surface: same original surface, same replacement; "
                   "occurrence: draw independently")
      ->check(CLI::IsMember({"surface", "occurrence"}))
      ->capture_default_str();
  perturb_cmd->add_option("--out", perturb_args.out, "Perturbed CoNLL file")
      ->required();
  perturb_cmd->add_option("--manifest", perturb_args.manifest,
                          "Write the substitution plan as JSON");
  perturb_cmd->add_option(
      "--novelty-ref", perturb_args.novelty_ref,
      "Training corpus to report the unseen-replacement fraction against");
  add_format_flags(perturb_cmd, perturb_args.fmt);

  SplitArgs split_args;
  auto* split_cmd = app.add_subcommand(
      "split", "Proportion-preserving random train/dev/test splits");
  split_cmd->add_option("--in", split_args.in, "Input CoNLL file")->required();
  split_cmd->add_option("--proportions", split_args.proportions,
                        "train,dev,test fractions summing to 1");
  split_cmd->add_option("--ref-train", split_args.ref_train,
                        "Reference split to take proportions from");
  split_cmd->add_option("--ref-dev", split_args.ref_dev, "Reference dev file");
  split_cmd->add_option("--ref-test", split_args.ref_test,
                        "Reference test file");
  split_cmd->add_option("--seed", split_args.seed, "Base seed")
      ->capture_default_str();
  split_cmd->add_option("--n", split_args.n, "Number of splits")
      ->capture_default_str();
  split_cmd->add_option("--out-dir", split_args.out_dir, "Output directory")
      ->required();
  split_cmd->add_flag("--stratify-by-genre", split_args.stratify,
                      "Apply the proportions within each genre");
  split_cmd->add_flag("--by-document", split_args.by_document,
                      "Document-level splitting (not implemented)");
  split_cmd->add_option("--genre-map", split_args.genre_map,
                        "Genre map file for --stratify-by-genre");
  add_format_flags(split_cmd, split_args.fmt);

  CrossGenreArgs cross_args;
  auto* cross_cmd = app.add_subcommand(
      "cross-genre", "Build genre-filtered train/dev/test file sets");
  cross_cmd->add_option("--train", cross_args.train, "Train-role CoNLL file")
      ->required();
  cross_cmd->add_option("--dev", cross_args.dev, "Dev-role CoNLL file")
      ->required();
  cross_cmd->add_option("--test", cross_args.test, "Test-role CoNLL file")
      ->required();
  cross_cmd
      ->add_option("--mode", cross_args.mode,
                   "single:<genre> trains on one genre; loo:<genre> trains on "
                   "every genre except it")
      ->required();
  cross_cmd->add_option("--dev-genre", cross_args.dev_genre,
                        "Genre of the dev set (default: the --mode genre)");
  cross_cmd->add_option("--genre-map", cross_args.genre_map, "Genre map file");
  cross_cmd->add_option("--out-dir", cross_args.out_dir, "Output directory")
      ->required();
  add_format_flags(cross_cmd, cross_args.fmt);

  OverlapArgs overlap_args;
  auto* overlap_cmd = app.add_subcommand(
      "overlap", "Train/test entity-token overlap for one entity type");
  overlap_cmd->add_option("--train", overlap_args.train, "Train CoNLL file")
      ->required();
  overlap_cmd->add_option("--test", overlap_args.test, "Test CoNLL file")
      ->required();
  overlap_cmd->add_option("--type", overlap_args.type, "Entity type")
      ->required();
  overlap_cmd->add_option("--out", overlap_args.out,
                          "Output file (default stdout)");
  add_format_flags(overlap_cmd, overlap_args.fmt);

  AggregateArgs aggregate_args;
  auto* aggregate_cmd = app.add_subcommand(
      "aggregate", "Mean / sample SD / min / max over one value per line");
  aggregate_cmd
      ->add_option("--values", aggregate_args.values, "File of numbers")
      ->required();
  aggregate_cmd->add_flag("--md", aggregate_args.md, "Write a Markdown table");
  aggregate_cmd->add_option("--out", aggregate_args.out,
                            "Output file (default stdout)");

  TTestArgs ttest_args;
  auto* ttest_cmd = app.add_subcommand(
      "ttest", "Two-tailed paired t-test between two aligned value files");
  ttest_cmd->add_option("--a", ttest_args.a_file, "First value file")
      ->required();
  ttest_cmd->add_option("--b", ttest_args.b_file, "Second value file")
      ->required();
  ttest_cmd->add_option("--out", ttest_args.out, "Output file (default stdout)");

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Baseline-vs-candidate deltas between two score reports");
  compare_cmd
      ->add_option("--baseline", compare_args.baseline,
                   "Baseline score-report JSON")
      ->required();
  compare_cmd
      ->add_option("--candidate", compare_args.candidate,
                   "Candidate score-report JSON")
      ->required();
  compare_cmd->add_option("--label", compare_args.label,
                          "Name of the candidate row")
      ->capture_default_str();
  compare_cmd->add_flag("--md", compare_args.md, "Write a Markdown table");
  compare_cmd->add_option("--out", compare_args.out,
                          "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageOrIo;
  }

  try {
    if (score_cmd->parsed()) return run_score(score_args);
    if (perturb_cmd->parsed()) return run_perturb(perturb_args);
    if (split_cmd->parsed()) return run_split(split_args);
    if (cross_cmd->parsed()) return run_cross_genre(cross_args);
    if (overlap_cmd->parsed()) return run_overlap(overlap_args);
    if (aggregate_cmd->parsed()) return run_aggregate(aggregate_args);
    if (ttest_cmd->parsed()) return run_ttest(ttest_args);
    if (compare_cmd->parsed()) return run_compare(compare_args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageOrIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kOk;
}
