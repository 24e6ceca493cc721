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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "neraudit/corpus.hpp"

namespace neraudit {

// A typed entity span: token range [start, end) within one sentence.
// `surface` is filled when decoding from a Sentence, empty when decoding
// from bare tags.
struct Mention {
  std::string entity_type;
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> surface;

  std::size_t length() const { return end - start; }
  friend bool operator==(const Mention&, const Mention&) = default;
};

enum class BioMode {
  // An "I-X" after "O", start of sentence, or a different type opens a new
  // mention of type X (the conllEval-family convention).
  kLenient,
  // The same situations are errors; useful for dataset linting.
  kStrict,
};

std::vector<Mention> decode_mentions(std::span<const std::string> tags,
                                     BioMode mode = BioMode::kLenient);
std::vector<Mention> decode_mentions(const Sentence& sentence,
                                     BioMode mode = BioMode::kLenient);

// Inverse of decode for sorted, non-overlapping mentions within
// [0, length). Positions inside a mention get "B-T"/"I-T", the rest "O".
std::vector<std::string> encode_mentions(std::span<const Mention> mentions,
                                         std::size_t length);

}  // namespace neraudit
