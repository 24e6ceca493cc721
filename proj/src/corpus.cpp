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

#include "neraudit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace neraudit {

namespace {

bool is_type_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\v\f\r") == std::string_view::npos;
}

bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\v\f\r\n") != std::string_view::npos;
}

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::string_view(" \t\v\f\r").find(line[i]) !=
                                  std::string_view::npos) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && std::string_view(" \t\v\f\r").find(line[i]) ==
                                  std::string_view::npos) {
      ++i;
    }
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> split_fixed(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string prefix_before_slash(const std::string& doc_id) {
  const auto pos = doc_id.find('/');
  return pos == std::string::npos ? doc_id : doc_id.substr(0, pos);
}

std::string source_for_doc(const std::string& doc_id, const FormatConfig& cfg,
                           std::size_t line_no) {
  switch (cfg.source_policy) {
    case SourcePolicy::kDocIdPrefix:
      return prefix_before_slash(doc_id);
    case SourcePolicy::kFixed:
      return cfg.fixed_source;
    case SourcePolicy::kSidecarMap: {
      const auto it = cfg.source_map.find(doc_id);
      if (it == cfg.source_map.end()) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": no source-map entry for doc id \"" + doc_id +
                             "\"",
                         line_no);
      }
      return it->second;
    }
  }
  throw Error("unreachable source policy");
}

}  // namespace

bool is_valid_bio_tag(std::string_view tag) {
  if (tag == "O") return true;
  if (tag.size() < 3) return false;
  if (tag[0] != 'B' && tag[0] != 'I') return false;
  if (tag[1] != '-') return false;
  return std::all_of(tag.begin() + 2, tag.end(), is_type_char);
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::set<std::string> Corpus::source_set() const {
  std::set<std::string> out;
  for (const auto& s : sentences) out.insert(s.source);
  return out;
}

GenreMap GenreMap::default_map() {
  GenreMap gm;
  gm.add("bn", "news");
  gm.add("mz", "news");
  gm.add("nw", "news");
  gm.add("bc", "bc");
  gm.add("tc", "tc");
  gm.add("wb", "wb");
  return gm;
}

void GenreMap::add(const std::string& source, const std::string& genre) {
  const auto it = index_.find(source);
  if (it != index_.end()) {
    if (entries_[it->second].second != genre) {
      throw Error("conflicting genre for source \"" + source + "\": \"" +
                  entries_[it->second].second + "\" vs \"" + genre + "\"");
    }
    return;
  }
  index_[source] = entries_.size();
  entries_.emplace_back(source, genre);
  if (std::find(genre_order_.begin(), genre_order_.end(), genre) ==
      genre_order_.end()) {
    genre_order_.push_back(genre);
  }
}

bool GenreMap::contains(const std::string& source) const {
  return index_.count(source) != 0;
}

const std::string& GenreMap::genre_of(const std::string& source) const {
  const auto it = index_.find(source);
  if (it == index_.end()) throw UnmappedSourceError(source);
  return entries_[it->second].second;
}

const std::string& genre_of(const std::string& source, const GenreMap& gm) {
  return gm.genre_of(source);
}

Corpus parse_conll(std::istream& in, const FormatConfig& cfg) {
  if (cfg.tag_column && *cfg.tag_column == cfg.token_column) {
    throw Error("token column and tag column coincide (" +
                std::to_string(cfg.token_column) + ")");
  }

  Corpus corpus;
  std::vector<Token> pending;
  std::string doc_id = "doc0";
  std::map<std::string, std::int64_t> next_index;
  std::size_t docstarts_seen = 0;
  std::size_t line_no = 0;

  const auto split = [&cfg](std::string_view line) {
    return cfg.whitespace_separated ? split_whitespace(line)
                                    : split_fixed(line, cfg.separator);
  };

  const auto flush = [&](std::size_t at_line) {
    if (pending.empty()) return;
    Sentence s;
    s.tokens = std::move(pending);
    pending.clear();
    s.doc_id = doc_id;
    s.source = source_for_doc(doc_id, cfg, at_line);
    s.index = next_index[doc_id]++;
    corpus.sentences.push_back(std::move(s));
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (is_blank(line)) {
      flush(line_no);
      continue;
    }
    if (!cfg.comment_prefix.empty() &&
        line.compare(0, cfg.comment_prefix.size(), cfg.comment_prefix) == 0) {
      continue;
    }

    auto cols = split(line);
    if (!cols.empty() && cols.front() == cfg.docstart_marker) {
      flush(line_no);
      ++docstarts_seen;
      // A single extra field names the document; anything else (the bare
      // marker, or classic filler columns) gets a synthesized id.
      doc_id = cols.size() == 2 ? cols[1]
                                : "doc" + std::to_string(docstarts_seen);
      continue;
    }

    const std::size_t tag_col =
        cfg.tag_column ? *cfg.tag_column : cols.size() - 1;
    const std::size_t need = std::max(cfg.token_column, tag_col) + 1;
    if (cols.size() < need || tag_col == cfg.token_column) {
      throw ParseError("line " + std::to_string(line_no) + ": expected at least " +
                           std::to_string(std::max(need, cfg.token_column + 2)) +
                           " columns, got " + std::to_string(cols.size()),
                       line_no);
    }

    Token tok;
    tok.surface = cols[cfg.token_column];
    tok.tag = cols[tag_col];
    if (tok.surface.empty() || has_whitespace(tok.surface)) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": empty or whitespace-containing token surface",
                       line_no);
    }
    if (!is_valid_bio_tag(tok.tag)) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": invalid BIO tag \"" + tok.tag + "\"",
                       line_no);
    }
    pending.push_back(std::move(tok));
  }
  flush(line_no + 1);
  return corpus;
}

Corpus parse_conll_text(std::string_view text, const FormatConfig& cfg) {
  std::istringstream in{std::string(text)};
  return parse_conll(in, cfg);
}

Corpus read_conll_file(const std::string& path, const FormatConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  return parse_conll(in, cfg);
}

void write_conll(const Corpus& c, std::ostream& out, const FormatConfig& cfg) {
  const char sep = cfg.write_separator;
  const std::size_t tag_col =
      cfg.tag_column ? *cfg.tag_column : cfg.token_column + 1;
  if (tag_col == cfg.token_column) {
    throw Error("token column and tag column coincide (" +
                std::to_string(cfg.token_column) + ")");
  }
  const std::size_t ncols = std::max(cfg.token_column, tag_col) + 1;

  const auto check_field = [sep](const std::string& value, const char* what) {
    if (has_whitespace(value) || value.find(sep) != std::string::npos) {
      throw Error(std::string(what) + " \"" + value +
                  "\" contains whitespace or the column separator");
    }
  };

  const std::string* prev_doc = nullptr;
  for (const auto& s : c.sentences) {
    if (prev_doc == nullptr || *prev_doc != s.doc_id) {
      out << cfg.docstart_marker;
      if (!s.doc_id.empty()) {
        check_field(s.doc_id, "doc id");
        out << sep << s.doc_id;
      }
      out << '\n';
      prev_doc = &s.doc_id;
    }
    for (const auto& t : s.tokens) {
      check_field(t.surface, "token surface");
      check_field(t.tag, "tag");
      for (std::size_t col = 0; col < ncols; ++col) {
        if (col > 0) out << sep;
        if (col == cfg.token_column) {
          out << t.surface;
        } else if (col == tag_col) {
          out << t.tag;
        } else {
          out << '-';
        }
      }
      out << '\n';
    }
    out << '\n';
  }
}

std::string write_conll_text(const Corpus& c, const FormatConfig& cfg) {
  std::ostringstream out;
  write_conll(c, out, cfg);
  return out.str();
}

void write_conll_file(const Corpus& c, const std::string& path,
                      const FormatConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open file for writing: " + path);
  write_conll(c, out, cfg);
  if (!out) throw IoError("write failed: " + path);
}

Corpus filter_corpus(const Corpus& c, const std::set<std::string>& selector,
                     SelectorKind kind, const GenreMap& gm) {
  if (selector.empty()) throw Error("empty selector");
  Corpus out;
  for (const auto& s : c.sentences) {
    const std::string& key =
        kind == SelectorKind::kSource ? s.source : gm.genre_of(s.source);
    if (selector.count(key)) out.sentences.push_back(s);
  }
  return out;
}

namespace {

// Shared reader for two-column tab-separated mapping files.
template <typename Add>
void read_tsv_pairs(std::istream& in, const char* what, Add&& add) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line) || line[0] == '#') continue;
    const auto cols = split_fixed(line, '\t');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected \"" +
                           what + "\" separated by one tab",
                       line_no);
    }
    add(cols[0], cols[1], line_no);
  }
}

}  // namespace

GenreMap load_genre_map(std::istream& in) {
  GenreMap gm;
  read_tsv_pairs(in, "source<TAB>genre",
                 [&gm](const std::string& source, const std::string& genre,
                       std::size_t line_no) {
                   try {
                     gm.add(source, genre);
                   } catch (const Error& e) {
                     throw ParseError(
                         "line " + std::to_string(line_no) + ": " + e.what(),
                         line_no);
                   }
                 });
  return gm;
}

GenreMap load_genre_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  return load_genre_map(in);
}

std::map<std::string, std::string> load_source_map(std::istream& in) {
  std::map<std::string, std::string> out;
  read_tsv_pairs(in, "doc_id<TAB>source",
                 [&out](const std::string& doc, const std::string& source,
                        std::size_t line_no) {
                   const auto it = out.find(doc);
                   if (it != out.end() && it->second != source) {
                     throw ParseError("line " + std::to_string(line_no) +
                                          ": conflicting source for doc id \"" +
                                          doc + "\"",
                                      line_no);
                   }
                   out[doc] = source;
                 });
  return out;
}

std::map<std::string, std::string> load_source_map_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  return load_source_map(in);
}

}  // namespace neraudit
