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

#include "scribeforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "scribeforge/error.hpp"

namespace scribeforge::geometry {
namespace {

bool in_unit_interval(double s) { return s >= 0.0 && s <= 1.0; }

struct Pixel {
  int x;
  int y;
};

// Visits the pixels of the digital line from a to b, endpoints included.
template <class Visit>
void bresenham(Pixel a, Pixel b, Visit&& visit) {
  const int dx = std::abs(b.x - a.x);
  const int dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1;
  const int sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  int x = a.x, y = a.y;
  for (;;) {
    visit(x, y);
    if (x == b.x && y == b.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

// Drops interior samples lying on the chord between their neighbours, so a
// straight curve draws as a single Bresenham line.
std::vector<Point2> drop_collinear(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  out.push_back(pts.front());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Point2& a = out.back();
    const Point2& p = pts[i];
    const Point2& b = pts[i + 1];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    const double dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    const bool between = dot >= 0 && dot <= len2;
    if (std::abs(cross) <= 1e-9 * std::max(1.0, len2) && between) continue;
    out.push_back(p);
  }
  if (pts.size() > 1) out.push_back(pts.back());
  return out;
}

}  // namespace

ControlPolygon::ControlPolygon(std::vector<Point2> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw DomainError("control polygon needs at least 2 points, got " +
                      std::to_string(points_.size()));
  }
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DomainError("control point coordinates must be finite");
    }
  }
}

ControlPolygon ControlPolygon::reversed() const {
  return ControlPolygon(std::vector<Point2>(points_.rbegin(), points_.rend()));
}

double bernstein(int j, int n, double s) {
  if (n < 0 || j < 0 || j > n) {
    throw DomainError("bernstein: need 0 <= j <= n, got j=" +
                      std::to_string(j) + " n=" + std::to_string(n));
  }
  if (!in_unit_interval(s)) {
    throw DomainError("bernstein: parameter outside [0, 1]");
  }
  double binom = 1.0;
  for (int i = 1; i <= j; ++i) binom = binom * (n - j + i) / i;
  return binom * std::pow(s, j) * std::pow(1.0 - s, n - j);
}

Point2 bezier_point(const ControlPolygon& poly, double s) {
  if (!in_unit_interval(s)) {
    throw DomainError("bezier_point: parameter outside [0, 1]");
  }
  std::vector<Point2> work(poly.points().begin(), poly.points().end());
  const double t = 1.0 - s;
  for (std::size_t level = work.size() - 1; level > 0; --level) {
    for (std::size_t i = 0; i < level; ++i) {
      work[i].x = t * work[i].x + s * work[i + 1].x;
      work[i].y = t * work[i].y + s * work[i + 1].y;
    }
  }
  return work.front();
}

std::vector<CurveSample> sample_curve(const ControlPolygon& poly, int count) {
  if (count < 2) throw DomainError("sample_curve: need at least 2 samples");
  std::vector<CurveSample> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    // The last sample is pinned to 1 so it is exactly the end point.
    const double s = i + 1 == count ? 1.0 : static_cast<double>(i) / (count - 1);
    out.push_back({s, bezier_point(poly, s)});
  }
  return out;
}

int default_sample_count(const ControlPolygon& poly) {
  return 10 * static_cast<int>(poly.size());
}

CoverageMask::CoverageMask(int x0, int y0, int width, int height)
    : x0_(x0), y0_(y0), width_(width), height_(height) {
  if (width < 0 || height < 0) throw DomainError("negative mask size");
  coverage_.assign(static_cast<std::size_t>(width) * height, 0.0f);
}

float CoverageMask::at(int x, int y) const {
  const int lx = x - x0_, ly = y - y0_;
  if (lx < 0 || ly < 0 || lx >= width_ || ly >= height_) return 0.0f;
  return coverage_[static_cast<std::size_t>(ly) * width_ + lx];
}

void CoverageMask::set(int x, int y, float value) {
  const int lx = x - x0_, ly = y - y0_;
  if (lx < 0 || ly < 0 || lx >= width_ || ly >= height_) {
    throw DomainError("coverage write outside mask");
  }
  coverage_[static_cast<std::size_t>(ly) * width_ + lx] =
      std::clamp(value, 0.0f, 1.0f);
}

std::size_t CoverageMask::count() const {
  return static_cast<std::size_t>(std::count_if(
      coverage_.begin(), coverage_.end(), [](float c) { return c > 0.0f; }));
}

CoverageMask rasterize_curve(const ControlPolygon& poly, int samples,
                             int thickness) {
  if (samples < 2) throw DomainError("rasterize_curve: samples must be >= 2");
  if (thickness < 1) {
    throw DomainError("rasterize_curve: thickness must be >= 1");
  }
  std::vector<Point2> pts;
  for (const auto& cs : sample_curve(poly, samples)) pts.push_back(cs.position);
  pts = drop_collinear(pts);

  std::vector<Pixel> centers;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Pixel a{static_cast<int>(std::lround(pts[i].x)),
                  static_cast<int>(std::lround(pts[i].y))};
    const Pixel b{static_cast<int>(std::lround(pts[i + 1].x)),
                  static_cast<int>(std::lround(pts[i + 1].y))};
    bresenham(a, b, [&](int x, int y) { centers.push_back({x, y}); });
  }

  // Disc of diameter `thickness`: offsets with dx^2 + dy^2 <= (t/2)^2.
  const double r2 = thickness * thickness / 4.0;
  const int reach = thickness / 2;
  std::vector<Pixel> disc;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      if (dx * dx + dy * dy <= r2) disc.push_back({dx, dy});
    }
  }

  auto [min_x, max_x] = std::minmax_element(
      centers.begin(), centers.end(),
      [](const Pixel& a, const Pixel& b) { return a.x < b.x; });
  auto [min_y, max_y] = std::minmax_element(
      centers.begin(), centers.end(),
      [](const Pixel& a, const Pixel& b) { return a.y < b.y; });
  CoverageMask mask(min_x->x - reach, min_y->y - reach,
                    max_x->x - min_x->x + 2 * reach + 1,
                    max_y->y - min_y->y + 2 * reach + 1);
  for (const Pixel& c : centers) {
    for (const Pixel& d : disc) mask.set(c.x + d.x, c.y + d.y, 1.0f);
  }
  return mask;
}

}  // namespace scribeforge::geometry
