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

#include "scribeforge/alphabet.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/utf8.hpp"

namespace scribeforge {

Alphabet::Alphabet(std::u32string symbols, int blank_index)
    : symbols_(std::move(symbols)), blank_index_(blank_index) {
  if (blank_index_ < 0 || blank_index_ > size()) {
    throw DomainError("blank index " + std::to_string(blank_index_) +
                      " outside [0, " + std::to_string(size()) + "]");
  }
  for (int i = 0; i < size(); ++i) {
    const int cls = i < blank_index_ ? i : i + 1;
    if (!lookup_.emplace(symbols_[i], cls).second) {
      throw DomainError("duplicate alphabet symbol " +
                        utf8::describe(symbols_[i]));
    }
  }
}

Alphabet Alphabet::from_utf8(std::string_view symbols, int blank_index) {
  return Alphabet(utf8::decode(symbols), blank_index);
}

std::optional<int> Alphabet::class_of(char32_t symbol) const {
  auto it = lookup_.find(symbol);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

char32_t Alphabet::symbol_of_class(int cls) const {
  if (cls < 0 || cls >= num_classes() || cls == blank_index_) {
    throw DomainError("class " + std::to_string(cls) + " is not a symbol");
  }
  return symbols_[cls < blank_index_ ? cls : cls - 1];
}

std::vector<int> Alphabet::encode(std::u32string_view text) const {
  std::vector<int> out;
  out.reserve(text.size());
  for (char32_t c : text) {
    auto cls = class_of(c);
    if (!cls) {
      throw VocabularyError("character " + utf8::describe(c) +
                                " is not in the alphabet",
                            c);
    }
    out.push_back(*cls);
  }
  return out;
}

std::string Alphabet::to_json() const {
  nlohmann::json j;
  j["symbols"] = utf8::encode(symbols_);
  j["blank_index"] = blank_index_;
  return j.dump();
}

Alphabet Alphabet::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return Alphabet::from_utf8(j.at("symbols").get<std::string>(),
                               j.value("blank_index", 0));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("alphabet JSON: ") + e.what());
  }
}

Alphabet load_alphabet(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open alphabet file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return Alphabet::from_json(buf.str());
}

void save_alphabet(const std::filesystem::path& path,
                   const Alphabet& alphabet) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write alphabet file " + path.string());
  out << alphabet.to_json() << '\n';
}

}  // namespace scribeforge
