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

#include "scribeforge/corpus.hpp"

#include <fstream>
#include <iterator>

#include "json.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/utf8.hpp"

namespace scribeforge::corpus {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

// Calls visit(decoded_line) for each '\n'-terminated line; a trailing '\r' is
// treated as part of the terminator. Returns whether the text ended with a
// newline.
template <class Visit>
bool for_each_line(std::string_view text, Visit&& visit) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    const bool terminated = nl != std::string_view::npos;
    if (!terminated) nl = text.size();
    std::string_view raw = text.substr(start, nl - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::u32string line;
    try {
      line = utf8::decode(raw);
    } catch (const Utf8Error& e) {
      throw Utf8Error("invalid UTF-8 in corpus", start + e.offset());
    }
    visit(line);
    start = nl + 1;
  }
  return !text.empty() && text.back() == '\n';
}

}  // namespace

FilterMode parse_filter_mode(std::string_view name) {
  if (name == "skip-line") return FilterMode::kSkipLine;
  if (name == "drop-chars") return FilterMode::kDropChars;
  throw DomainError("unknown filter mode '" + std::string(name) +
                    "' (expected skip-line or drop-chars)");
}

std::string_view to_string(FilterMode mode) {
  return mode == FilterMode::kSkipLine ? "skip-line" : "drop-chars";
}

std::size_t CorpusStats::dropped_total() const {
  std::size_t n = 0;
  for (const auto& [c, count] : dropped_chars) n += count;
  return n;
}

std::vector<std::u32string> filter_line(std::u32string_view line,
                                        const Alphabet& alphabet,
                                        const FilterOptions& options,
                                        CorpusStats& stats) {
  ++stats.total_lines;
  if (line.empty()) return {std::u32string{}};

  std::u32string kept;
  kept.reserve(line.size());
  bool rejected = false;
  for (char32_t c : line) {
    if (alphabet.contains(c)) {
      kept.push_back(c);
    } else {
      ++stats.dropped_chars[c];
      rejected = true;
    }
  }
  if (kept.empty() || (rejected && options.mode == FilterMode::kSkipLine)) {
    return {};
  }
  ++stats.usable_lines;

  std::vector<std::u32string> out;
  const auto cap = static_cast<std::size_t>(options.max_line_len);
  std::u32string_view rest = kept;
  while (cap > 0 && rest.size() > cap) {
    // Break after the last space that still fits; the space stays with the
    // first piece so no character is lost.
    const auto space = rest.substr(0, cap).rfind(U' ');
    const std::size_t cut =
        space == std::u32string_view::npos ? cap : space + 1;
    out.emplace_back(rest.substr(0, cut));
    rest.remove_prefix(cut);
  }
  if (!rest.empty()) out.emplace_back(rest);
  return out;
}

CorpusStats filter_text(std::string_view text, std::string& out,
                        const Alphabet& alphabet,
                        const FilterOptions& options) {
  CorpusStats stats;
  out.clear();
  const bool trailing_newline =
      for_each_line(text, [&](const std::u32string& line) {
        for (const auto& piece : filter_line(line, alphabet, options, stats)) {
          out += utf8::encode(piece);
          out += '\n';
        }
      });
  if (!trailing_newline && !out.empty()) out.pop_back();
  return stats;
}

CorpusStats filter_corpus(const fs::path& input, const fs::path& output,
                          const Alphabet& alphabet,
                          const FilterOptions& options) {
  const std::string text = read_file(input);
  std::string filtered;
  CorpusStats stats;
  try {
    stats = filter_text(text, filtered, alphabet, options);
  } catch (const Utf8Error& e) {
    throw Utf8Error(input.string() + ": invalid UTF-8", e.offset());
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw IoError("cannot write " + output.string());
  out << filtered;
  if (!out) throw IoError("write failed: " + output.string());
  return stats;
}

std::vector<std::string> load_usable_lines(const fs::path& input,
                                           const Alphabet& alphabet,
                                           const FilterOptions& options,
                                           CorpusStats* stats) {
  const std::string text = read_file(input);
  CorpusStats local;
  std::vector<std::string> lines;
  try {
    for_each_line(text, [&](const std::u32string& line) {
      for (const auto& piece : filter_line(line, alphabet, options, local)) {
        if (!piece.empty()) lines.push_back(utf8::encode(piece));
      }
    });
  } catch (const Utf8Error& e) {
    throw Utf8Error(input.string() + ": invalid UTF-8", e.offset());
  }
  if (stats) *stats = std::move(local);
  return lines;
}

std::string stats_to_json(const CorpusStats& stats) {
  nlohmann::json dropped = nlohmann::json::object();
  for (const auto& [c, n] : stats.dropped_chars) dropped[utf8::encode(c)] = n;
  nlohmann::json j;
  j["total_lines"] = stats.total_lines;
  j["usable_lines"] = stats.usable_lines;
  j["dropped_total"] = stats.dropped_total();
  j["dropped_chars"] = std::move(dropped);
  return j.dump();
}

}  // namespace scribeforge::corpus
