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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "neraudit/errors.hpp"

namespace neraudit {

// One token of a BIO-annotated sentence. `tag` is "O", or "B-"/"I-"
// followed by an entity-type name made of letters, digits and underscores.
struct Token {
  std::string surface;
  std::string tag;

  friend bool operator==(const Token&, const Token&) = default;
};

bool is_valid_bio_tag(std::string_view tag);

struct Sentence {
  std::vector<Token> tokens;
  std::string doc_id;
  std::string source;
  std::int64_t index = 0;  // position of the sentence within its document

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Corpus {
  std::vector<Sentence> sentences;

  bool empty() const { return sentences.empty(); }
  std::size_t size() const { return sentences.size(); }
  std::size_t token_count() const;
  std::set<std::string> source_set() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

enum class SourcePolicy {
  kDocIdPrefix,  // source = doc id up to the first '/'
  kFixed,        // one source label for the whole file
  kSidecarMap,   // doc id -> source lookup table
};

// Column-format description for CoNLL-style files. Parsing splits rows on
// any whitespace by default, or on a fixed character; writing always uses
// the fixed `write_separator`.
struct FormatConfig {
  bool whitespace_separated = true;
  char separator = '\t';       // used when whitespace_separated is false
  char write_separator = ' ';  // single space by default, tab selectable

  std::size_t token_column = 0;
  std::optional<std::size_t> tag_column;  // unset = last column

  std::string comment_prefix;  // empty = comments disabled
  std::string docstart_marker = "-DOCSTART-";

  SourcePolicy source_policy = SourcePolicy::kDocIdPrefix;
  std::string fixed_source = "all";
  std::map<std::string, std::string> source_map;  // doc_id -> source
};

// Ordered source -> genre mapping. Lookup order does not matter, but the
// first-appearance order of genres is preserved for rendering.
class GenreMap {
 public:
  GenreMap() = default;

  // bn/mz/nw -> news, bc -> bc, tc -> tc, wb -> wb.
  static GenreMap default_map();

  void add(const std::string& source, const std::string& genre);
  bool contains(const std::string& source) const;
  // Throws UnmappedSourceError when `source` has no entry.
  const std::string& genre_of(const std::string& source) const;

  // Genres in first-appearance order, deduplicated.
  const std::vector<std::string>& genres() const { return genre_order_; }
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> genre_order_;
};

Corpus parse_conll(std::istream& in, const FormatConfig& cfg = {});
Corpus parse_conll_text(std::string_view text, const FormatConfig& cfg = {});
Corpus read_conll_file(const std::string& path, const FormatConfig& cfg = {});

void write_conll(const Corpus& c, std::ostream& out,
                 const FormatConfig& cfg = {});
std::string write_conll_text(const Corpus& c, const FormatConfig& cfg = {});
void write_conll_file(const Corpus& c, const std::string& path,
                      const FormatConfig& cfg = {});

const std::string& genre_of(const std::string& source, const GenreMap& gm);

enum class SelectorKind { kSource, kGenre };

// Subsequence of sentences whose source (or genre) is in `selector`,
// original order preserved. With a genre selector, every source present in
// the corpus must be mapped, selected or not.
Corpus filter_corpus(const Corpus& c, const std::set<std::string>& selector,
                     SelectorKind kind,
                     const GenreMap& gm = GenreMap::default_map());

// Lines of "source<TAB>genre". '#' comments and blank lines are skipped.
GenreMap load_genre_map(std::istream& in);
GenreMap load_genre_map_file(const std::string& path);

// Lines of "doc_id<TAB>source".
std::map<std::string, std::string> load_source_map(std::istream& in);
std::map<std::string, std::string> load_source_map_file(
    const std::string& path);

}  // namespace neraudit
