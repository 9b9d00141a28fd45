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
#include <span>
#include <vector>

namespace scribeforge {

// Grayscale raster of one text line: row-major, 0 = ink, 255 = paper.
class LineImage {
 public:
  LineImage() = default;
  LineImage(int width, int height, std::uint8_t fill = 255);
  LineImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span(pixels_).subspan(index(0, y), width_);
  }

  friend bool operator==(const LineImage&, const LineImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Columns [x0, x1) over the full height.
LineImage crop_columns(const LineImage& image, int x0, int x1);

// Box-filter (area) resampling: each output pixel is the exact average of
// the source area it covers. Integer upscales replicate pixels.
LineImage resize_area(const LineImage& image, int width, int height);

// Scales to `height` preserving aspect ratio; width rounds to nearest, min 1.
LineImage resize_to_height(const LineImage& image, int height);

// Horizontal concatenation; all parts must share a height.
LineImage hconcat(std::span<const LineImage> parts);

// Rescales intensities so the brightest pixel becomes 255.
LineImage normalize_background(const LineImage& image);

}  // namespace scribeforge
