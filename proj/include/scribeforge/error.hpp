// Copyright 2026 The ScribeForge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace scribeforge {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A character that the alphabet (or a segment bank) cannot represent.
class VocabularyError : public std::runtime_error {
 public:
  VocabularyError(const std::string& what, char32_t symbol)
      : std::runtime_error(what), symbol_(symbol) {}
  char32_t symbol() const { return symbol_; }

 private:
  char32_t symbol_;
};

// The transcript cannot be emitted within the available timesteps.
class AlignmentInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or byte stream.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid UTF-8; offset is the byte position of the first bad sequence.
class Utf8Error : public FormatError {
 public:
  Utf8Error(const std::string& what, std::size_t offset)
      : FormatError(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scribeforge
