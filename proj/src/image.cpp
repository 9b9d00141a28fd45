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

#include "scribeforge/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scribeforge/error.hpp"

namespace scribeforge {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw DomainError("image dimensions must be positive, got " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
}

struct Tap {
  int index;
  double weight;
};

// Source taps of each output cell when mapping `src` cells onto `dst`.
std::vector<std::vector<Tap>> area_taps(int src, int dst) {
  std::vector<std::vector<Tap>> taps(dst);
  const double scale = static_cast<double>(src) / dst;
  for (int o = 0; o < dst; ++o) {
    const double lo = o * scale;
    const double hi = (o + 1) * scale;
    const int first = static_cast<int>(std::floor(lo));
    const int last = std::min(src - 1, static_cast<int>(std::ceil(hi)) - 1);
    for (int i = first; i <= last; ++i) {
      const double w = std::min<double>(hi, i + 1) - std::max<double>(lo, i);
      if (w > 0) taps[o].push_back({i, w});
    }
  }
  return taps;
}

}  // namespace

LineImage::LineImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

LineImage::LineImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  const auto expected = static_cast<std::size_t>(width) * height;
  if (pixels_.size() != expected) {
    throw DomainError("pixel buffer holds " + std::to_string(pixels_.size()) +
                      " bytes, expected " + std::to_string(expected));
  }
}

LineImage crop_columns(const LineImage& image, int x0, int x1) {
  if (x0 < 0 || x1 > image.width() || x0 >= x1) {
    throw DomainError("crop [" + std::to_string(x0) + ", " +
                      std::to_string(x1) + ") outside image of width " +
                      std::to_string(image.width()));
  }
  LineImage out(x1 - x0, image.height());
  for (int y = 0; y < image.height(); ++y) {
    auto src = image.row(y).subspan(x0, x1 - x0);
    std::copy(src.begin(), src.end(), out.pixels().begin() +
                                          static_cast<std::ptrdiff_t>(y) *
                                              out.width());
  }
  return out;
}

LineImage resize_area(const LineImage& image, int width, int height) {
  check_dims(width, height);
  if (width == image.width() && height == image.height()) return image;
  const auto xtaps = area_taps(image.width(), width);
  const auto ytaps = area_taps(image.height(), height);

  // Horizontal pass into doubles, then vertical.
  std::vector<double> tmp(static_cast<std::size_t>(width) * image.height());
  for (int y = 0; y < image.height(); ++y) {
    auto row = image.row(y);
    for (int x = 0; x < width; ++x) {
      double acc = 0.0, norm = 0.0;
      for (const Tap& t : xtaps[x]) {
        acc += t.weight * row[t.index];
        norm += t.weight;
      }
      tmp[static_cast<std::size_t>(y) * width + x] = acc / norm;
    }
  }
  LineImage out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0, norm = 0.0;
      for (const Tap& t : ytaps[y]) {
        acc += t.weight * tmp[static_cast<std::size_t>(t.index) * width + x];
        norm += t.weight;
      }
      out.at(x, y) = static_cast<std::uint8_t>(
          std::clamp(std::lround(acc / norm), 0L, 255L));
    }
  }
  return out;
}

LineImage resize_to_height(const LineImage& image, int height) {
  check_dims(1, height);
  const long width = std::max(
      1L, std::lround(static_cast<double>(image.width()) * height /
                      image.height()));
  return resize_area(image, static_cast<int>(width), height);
}

LineImage hconcat(std::span<const LineImage> parts) {
  if (parts.empty()) throw DomainError("nothing to concatenate");
  const int height = parts.front().height();
  int width = 0;
  for (const auto& p : parts) {
    if (p.height() != height) {
      throw DomainError("concatenated images differ in height");
    }
    width += p.width();
  }
  LineImage out(width, height);
  for (int y = 0; y < height; ++y) {
    auto dst = out.pixels().begin() + static_cast<std::ptrdiff_t>(y) * width;
    for (const auto& p : parts) {
      auto src = p.row(y);
      dst = std::copy(src.begin(), src.end(), dst);
    }
  }
  return out;
}

LineImage normalize_background(const LineImage& image) {
  const auto px = image.pixels();
  const std::uint8_t peak = *std::max_element(px.begin(), px.end());
  if (peak == 0 || peak == 255) return image;
  LineImage out = image;
  for (auto& p : out.pixels()) {
    p = static_cast<std::uint8_t>(std::lround(p * 255.0 / peak));
  }
  return out;
}

}  // namespace scribeforge
