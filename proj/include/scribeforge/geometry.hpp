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

#include <initializer_list>
#include <span>
#include <vector>

namespace scribeforge::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Ordered Bezier control points v_0..v_n. Always holds at least two finite
// points; construction throws DomainError otherwise.
class ControlPolygon {
 public:
  explicit ControlPolygon(std::vector<Point2> points);
  ControlPolygon(std::initializer_list<Point2> points)
      : ControlPolygon(std::vector<Point2>(points)) {}

  int degree() const { return static_cast<int>(points_.size()) - 1; }
  std::size_t size() const { return points_.size(); }
  std::span<const Point2> points() const { return points_; }
  const Point2& front() const { return points_.front(); }
  const Point2& back() const { return points_.back(); }

  ControlPolygon reversed() const;

 private:
  std::vector<Point2> points_;
};

struct CurveSample {
  double s = 0.0;
  Point2 position;
};

// C(n, j) s^j (1 - s)^(n - j). Throws DomainError unless 0 <= j <= n and
// s is in [0, 1].
double bernstein(int j, int n, double s);

// Point on the Bezier curve at parameter s in [0, 1], evaluated with de
// Casteljau's recurrence. Endpoints are reproduced exactly.
Point2 bezier_point(const ControlPolygon& poly, double s);

// `count` evaluations at evenly spaced parameters 0, 1/(count-1), ..., 1.
std::vector<CurveSample> sample_curve(const ControlPolygon& poly, int count);

// Ten samples per control point.
int default_sample_count(const ControlPolygon& poly);

// Per-pixel coverage over an axis-aligned box of pixels. Pixel (x, y) is
// the unit square centred at integer coordinates (x, y).
class CoverageMask {
 public:
  CoverageMask() = default;
  CoverageMask(int x0, int y0, int width, int height);

  int x0() const { return x0_; }
  int y0() const { return y0_; }
  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  // Coverage in [0, 1]; zero outside the box.
  float at(int x, int y) const;
  void set(int x, int y, float value);

  // Number of pixels with nonzero coverage.
  std::size_t count() const;

 private:
  int x0_ = 0;
  int y0_ = 0;
  int width_ = 0;
  int height_ = 0;
  std::vector<float> coverage_;
};

// Draws the polyline through `samples` evenly spaced curve points by walking
// each chord with Bresenham's algorithm and stamping a disc of diameter
// `thickness` at every visited pixel. Thickness 1 stamps single pixels.
CoverageMask rasterize_curve(const ControlPolygon& poly, int samples,
                             int thickness);

}  // namespace scribeforge::geometry
