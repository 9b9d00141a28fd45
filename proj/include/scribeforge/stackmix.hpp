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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scribeforge/corpus.hpp"
#include "scribeforge/image.hpp"
#include "scribeforge/rng.hpp"
#include "scribeforge/segbank.hpp"

namespace scribeforge::stackmix {

// Distribution over the tokenizer's maximum token length, drawn once per
// generated line.
struct TokenizerMixture {
  std::vector<int> max_lens{3, 4, 5, 6, 7, 8};
  std::vector<double> probs{0.05, 0.15, 0.2, 0.2, 0.2, 0.2};

  void validate() const;
  int sample(Rng& rng) const;

  std::string to_json() const;
  static TokenizerMixture from_json(std::string_view json);
};

// Greedy longest match, left to right, against bank keys of at most
// `max_len` characters. Joining the tokens gives back `text` exactly.
// Characters outside the bank alphabet raise VocabularyError.
std::vector<std::string> mwe_tokenize(std::string_view text,
                                      const segbank::SegmentBank& bank,
                                      int max_len);

struct Provenance {
  std::string token;
  std::string source_line_id;
};

struct GeneratedLine {
  LineImage image;
  std::string transcript;
  std::vector<Provenance> provenance;
  std::vector<int> segment_widths;
  int max_len = 0;
};

// Draws a max_len from `mix`, tokenizes, samples one segment per token and
// stacks them left to right with no padding after normalizing each
// segment's background to white.
GeneratedLine stackmix_line(std::string_view text,
                            const segbank::SegmentBank& bank,
                            const TokenizerMixture& mix, Rng& rng);

struct GenerateOptions {
  std::size_t n_lines = 0;
  std::uint64_t seed = 0;
  corpus::FilterOptions filter;
  int jobs = 1;
  std::string id_prefix = "stackmix";
};

struct GenerateReport {
  std::size_t written = 0;
  std::size_t usable_lines = 0;
  std::size_t skipped_lines = 0;
  std::filesystem::path manifest;
};

// Writes <out_dir>/images/<id>.png and <out_dir>/manifest.tsv. Line i draws
// its text and segments from Rng(seed + i), so output is independent of
// `jobs`. Throws FormatError when no corpus line survives filtering.
GenerateReport generate_corpus(const std::filesystem::path& corpus,
                               const segbank::SegmentBank& bank,
                               const TokenizerMixture& mix,
                               const std::filesystem::path& out_dir,
                               const GenerateOptions& options);

}  // namespace scribeforge::stackmix
