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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scribeforge/alphabet.hpp"

namespace scribeforge::corpus {

enum class FilterMode { kSkipLine, kDropChars };

FilterMode parse_filter_mode(std::string_view name);
std::string_view to_string(FilterMode mode);

struct FilterOptions {
  FilterMode mode = FilterMode::kSkipLine;
  // Longer lines are split after the last space that fits; 0 disables.
  int max_line_len = 120;
};

struct CorpusStats {
  std::size_t total_lines = 0;
  // Input lines that produced at least one output character.
  std::size_t usable_lines = 0;
  // Out-of-alphabet characters seen, counted whether the line was skipped
  // or the character dropped.
  std::map<char32_t, std::size_t> dropped_chars;

  std::size_t dropped_total() const;
};

// Filters one line (no terminator). Returns zero or more output lines.
std::vector<std::u32string> filter_line(std::u32string_view line,
                                        const Alphabet& alphabet,
                                        const FilterOptions& options,
                                        CorpusStats& stats);

// Filters UTF-8 text. Empty input lines pass through; the final newline is
// kept only if the input had one, so fully valid input is reproduced byte
// for byte. Throws Utf8Error with the absolute byte offset.
CorpusStats filter_text(std::string_view text, std::string& out,
                        const Alphabet& alphabet, const FilterOptions& options);

CorpusStats filter_corpus(const std::filesystem::path& input,
                          const std::filesystem::path& output,
                          const Alphabet& alphabet,
                          const FilterOptions& options);

// Non-empty filtered lines of a corpus file, ready for generation.
std::vector<std::string> load_usable_lines(const std::filesystem::path& input,
                                           const Alphabet& alphabet,
                                           const FilterOptions& options,
                                           CorpusStats* stats = nullptr);

std::string stats_to_json(const CorpusStats& stats);

}  // namespace scribeforge::corpus
