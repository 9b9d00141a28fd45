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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scribeforge/alphabet.hpp"
#include "scribeforge/dataset.hpp"
#include "scribeforge/image.hpp"
#include "scribeforge/rng.hpp"

namespace scribeforge::segbank {

// A height-normalized crop of a training line showing `token`.
struct Segment {
  std::string token;
  LineImage image;
  std::string source_line_id;
  // Crop columns in the source line, before normalization.
  int start_px = 0;
  int end_px = 0;

  int height() const { return image.height(); }
};

class SegmentBank {
 public:
  SegmentBank() = default;
  SegmentBank(Alphabet alphabet, int norm_height);

  const Alphabet& alphabet() const { return alphabet_; }
  int norm_height() const { return norm_height_; }

  // Throws VocabularyError for characters outside the alphabet and
  // DomainError for an empty token or a height other than norm_height.
  void add(Segment segment);

  // Replaces segment `index` of the token; used by reservoir sampling.
  void replace(std::string_view token, std::size_t index, Segment segment);

  bool contains(std::string_view token) const;
  std::span<const Segment> segments(std::string_view token) const;
  const std::map<std::string, std::vector<Segment>, std::less<>>& entries()
      const {
    return entries_;
  }
  std::size_t token_count() const { return entries_.size(); }
  std::size_t segment_count() const;
  // Longest key, in characters.
  int longest_token() const { return longest_token_; }

 private:
  Alphabet alphabet_;
  int norm_height_ = 128;
  int longest_token_ = 0;
  std::map<std::string, std::vector<Segment>, std::less<>> entries_;
};

struct BankOptions {
  int max_token_len = 8;
  int norm_height = 128;
  // Segments kept per token; extra occurrences are reservoir-sampled.
  int cap = 500;
  std::uint64_t seed = 0;
  // Include manifest lines whose split is neither empty nor "train".
  bool all_splits = false;
  int jobs = 1;
};

struct BuildReport {
  std::size_t lines_used = 0;
  std::size_t lines_skipped = 0;
  std::vector<std::string> warnings;
};

using ImageLoader = std::function<LineImage(const std::string& line_id)>;

// Registers every contiguous run of 1..max_token_len characters of every
// annotated line (spaces and punctuation included) under its text. Lines
// with a boundary outside the image, or whose image cannot be loaded, are
// skipped with a warning.
SegmentBank build_bank(const std::vector<LineAnnotation>& annotations,
                       const ImageLoader& load_image, const Alphabet& alphabet,
                       const BankOptions& options,
                       BuildReport* report = nullptr);

// `images` is either a directory holding <line_id>.png or a manifest TSV;
// with a manifest, lines outside the training split are left out unless
// options.all_splits is set.
SegmentBank build_bank(const std::filesystem::path& annotations,
                       const std::filesystem::path& images,
                       const Alphabet& alphabet, const BankOptions& options,
                       BuildReport* report = nullptr);

// Directory layout: manifest.json (norm_height, alphabet, tokens with their
// segment files and provenance) plus segments/<n>.png.
void save_bank(const SegmentBank& bank, const std::filesystem::path& dir);
SegmentBank load_bank(const std::filesystem::path& dir);

// Uniform choice among the token's segments. An unknown token is assembled
// from the longest known pieces, left to right; a character with no segment
// raises VocabularyError.
Segment sample_segment(const SegmentBank& bank, std::string_view token,
                       Rng& rng);

}  // namespace scribeforge::segbank
