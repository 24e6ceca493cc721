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
#include <stdexcept>
#include <string>

namespace neraudit {

// Base class for failures caused by bad input data or an unsatisfiable
// request. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text. `location` is a 1-based line number for file
// input, or a 0-based token position for label sequences.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t location)
      : Error(msg), location_(location) {}
  std::size_t location() const { return location_; }

 private:
  std::size_t location_;
};

// Two corpora (or a plan and a corpus) that should line up do not.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// A source label with no genre (or sidecar) mapping.
class UnmappedSourceError : public Error {
 public:
  explicit UnmappedSourceError(const std::string& source)
      : Error("unmapped source \"" + source + "\""), source_(source) {}
  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

// A perturbation rule asked for a lexicon bucket that is empty.
class LexiconCoverageError : public Error {
 public:
  using Error::Error;
};

// Paired differences with zero variance: the t statistic is undefined.
class DegenerateVarianceError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failures. The CLI maps these to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace neraudit
