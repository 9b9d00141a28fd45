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
#include <span>
#include <vector>

namespace scribeforge::ctc {

// Per-timestep class posteriors of a CTC network for one line image.
// Rows are non-negative and sum to one within kRowSumTolerance.
class ProbMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-4;

  ProbMatrix(int timesteps, int classes, int source_width,
             std::vector<float> values);

  int timesteps() const { return timesteps_; }
  int classes() const { return classes_; }
  // Width in pixels of the image the network saw.
  int source_width() const { return source_width_; }

  float at(int t, int c) const {
    return values_[static_cast<std::size_t>(t) * classes_ + c];
  }
  std::span<const float> row(int t) const {
    return std::span(values_).subspan(static_cast<std::size_t>(t) * classes_,
                                      classes_);
  }
  std::span<const float> values() const { return values_; }

 private:
  int timesteps_;
  int classes_;
  int source_width_;
  std::vector<float> values_;
};

// Binary layout, little-endian throughout:
//   "CTCP"  u16 version  u32 N  u32 C  u32 W  then N*C float32, row-major.
inline constexpr std::uint16_t kProbFileVersion = 1;

std::vector<std::uint8_t> serialize(const ProbMatrix& probs);
ProbMatrix parse_prob_matrix(std::span<const std::uint8_t> bytes);

ProbMatrix read_prob_matrix(const std::filesystem::path& path);
void write_prob_matrix(const std::filesystem::path& path,
                       const ProbMatrix& probs);

}  // namespace scribeforge::ctc
