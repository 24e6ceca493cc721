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

#include "neraudit/spans.hpp"

#include <functional>

namespace neraudit {

namespace {

std::vector<Mention> decode_impl(
    std::size_t length,
    const std::function<const std::string&(std::size_t)>& tag_at,
    BioMode mode) {
  std::vector<Mention> out;
  bool open = false;
  std::string cur_type;
  std::size_t cur_start = 0;

  const auto close = [&](std::size_t end) {
    if (!open) return;
    out.push_back(Mention{cur_type, cur_start, end, {}});
    open = false;
  };

  for (std::size_t i = 0; i < length; ++i) {
    const std::string& tag = tag_at(i);
    if (!is_valid_bio_tag(tag)) {
      throw ParseError(
          "invalid BIO tag \"" + tag + "\" at position " + std::to_string(i),
          i);
    }
    if (tag == "O") {
      close(i);
      continue;
    }
    const char prefix = tag[0];
    std::string type = tag.substr(2);
    if (prefix == 'B') {
      close(i);
      open = true;
      cur_type = std::move(type);
      cur_start = i;
    } else if (open && cur_type == type) {
      continue;  // extends the current mention
    } else {
      if (mode == BioMode::kStrict) {
        throw ParseError("dangling \"" + tag + "\" at position " +
                             std::to_string(i) + " (no open " + type +
                             " mention)",
                         i);
      }
      close(i);
      open = true;
      cur_type = std::move(type);
      cur_start = i;
    }
  }
  close(length);
  return out;
}

}  // namespace

std::vector<Mention> decode_mentions(std::span<const std::string> tags,
                                     BioMode mode) {
  return decode_impl(
      tags.size(),
      [&tags](std::size_t i) -> const std::string& { return tags[i]; }, mode);
}

std::vector<Mention> decode_mentions(const Sentence& sentence, BioMode mode) {
  auto mentions = decode_impl(
      sentence.tokens.size(),
      [&sentence](std::size_t i) -> const std::string& {
        return sentence.tokens[i].tag;
      },
      mode);
  for (auto& m : mentions) {
    m.surface.reserve(m.length());
    for (std::size_t i = m.start; i < m.end; ++i) {
      m.surface.push_back(sentence.tokens[i].surface);
    }
  }
  return mentions;
}

std::vector<std::string> encode_mentions(std::span<const Mention> mentions,
                                         std::size_t length) {
  std::vector<std::string> tags(length, "O");
  std::size_t prev_end = 0;
  for (const auto& m : mentions) {
    if (m.start >= m.end || m.end > length) {
      throw Error("mention " + m.entity_type + "(" + std::to_string(m.start) +
                  "," + std::to_string(m.end) + ") out of range for length " +
                  std::to_string(length));
    }
    if (m.start < prev_end) {
      throw Error("mentions overlap or are unsorted at position " +
                  std::to_string(m.start));
    }
    tags[m.start] = "B-" + m.entity_type;
    for (std::size_t i = m.start + 1; i < m.end; ++i) {
      tags[i] = "I-" + m.entity_type;
    }
    prev_end = m.end;
  }
  return tags;
}

}  // namespace neraudit
