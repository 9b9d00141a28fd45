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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scribeforge {

// Character classes of a CTC output layer. Symbols occupy the class indices
// other than blank_index, in order; with blank_index 0 symbol i is class i+1.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::u32string symbols, int blank_index = 0);
  static Alphabet from_utf8(std::string_view symbols, int blank_index = 0);

  int size() const { return static_cast<int>(symbols_.size()); }
  int num_classes() const { return size() + 1; }
  int blank_index() const { return blank_index_; }
  const std::u32string& symbols() const { return symbols_; }

  bool contains(char32_t symbol) const { return lookup_.contains(symbol); }
  std::optional<int> class_of(char32_t symbol) const;
  char32_t symbol_of_class(int cls) const;

  // Class indices of `text`; throws VocabularyError naming the first
  // character the alphabet lacks.
  std::vector<int> encode(std::u32string_view text) const;

  // {"symbols": "<utf-8>", "blank_index": n}
  std::string to_json() const;
  static Alphabet from_json(std::string_view json);

 private:
  std::u32string symbols_;
  int blank_index_ = 0;
  std::unordered_map<char32_t, int> lookup_;
};

Alphabet load_alphabet(const std::filesystem::path& path);
void save_alphabet(const std::filesystem::path& path, const Alphabet& alphabet);

}  // namespace scribeforge
