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
#include <set>
#include <utility>

#include "doctest.h"
#include "scribeforge/error.hpp"
#include "scribeforge/rng.hpp"

using namespace scribeforge;
using namespace scribeforge::geometry;

namespace {

// B(s) = sum_j b_{j,n}(s) v_j evaluated term by term; the production path
// uses de Casteljau, so this is an independent route.
Point2 bernstein_sum(const ControlPolygon& poly, double s) {
  Point2 p{0, 0};
  const int n = poly.degree();
  for (int j = 0; j <= n; ++j) {
    const double b = bernstein(j, n, s);
    p.x += b * poly.points()[j].x;
    p.y += b * poly.points()[j].y;
  }
  return p;
}

ControlPolygon random_polygon(Rng& rng, int max_degree) {
  const int n = static_cast<int>(rng.uniform_int(1, max_degree));
  std::vector<Point2> pts;
  for (int i = 0; i <= n; ++i) {
    pts.push_back({rng.uniform(-100, 100), rng.uniform(-100, 100)});
  }
  return ControlPolygon(pts);
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain, counter-clockwise.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

bool inside_hull(const std::vector<Point2>& hull, const Point2& p, double tol) {
  if (hull.size() == 1) return std::hypot(p.x - hull[0].x, p.y - hull[0].y) <= tol;
  if (hull.size() == 2) return segment_distance(p, hull[0], hull[1]) <= tol;
  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) inside = false;
  }
  if (inside) return true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (segment_distance(p, hull[i], hull[(i + 1) % hull.size()]) <= tol) {
      return true;
    }
  }
  return false;
}

std::set<std::pair<int, int>> pixels(const CoverageMask& m) {
  std::set<std::pair<int, int>> out;
  for (int y = m.y0(); y < m.y0() + m.height(); ++y) {
    for (int x = m.x0(); x < m.x0() + m.width(); ++x) {
      if (m.at(x, y) > 0) out.insert({x, y});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bernstein closed-form values") {
  CHECK(bernstein(0, 0, 0.3) == 1.0);
  CHECK(bernstein(1, 2, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  double sum = 0.0;
  for (int j = 0; j <= 5; ++j) sum += bernstein(j, 5, 0.37);
  CHECK(std::abs(sum - 1.0) <= 1e-12);
  CHECK(bernstein(0, 3, 0.0) == 1.0);
  CHECK(bernstein(3, 3, 1.0) == 1.0);
  CHECK(bernstein(2, 4, 0.25) == doctest::Approx(6 * 0.0625 * 0.5625));
}

TEST_CASE("bernstein rejects arguments outside its domain") {
  CHECK_THROWS_AS(bernstein(3, 2, 0.5), DomainError);
  CHECK_THROWS_AS(bernstein(-1, 2, 0.5), DomainError);
  CHECK_THROWS_AS(bernstein(1, 2, -0.01), DomainError);
  CHECK_THROWS_AS(bernstein(1, 2, 1.01), DomainError);
  CHECK_THROWS_AS(bernstein(1, 2, std::nan("")), DomainError);
}

TEST_CASE("bernstein basis is a partition of unity and non-negative") {
  Rng rng(11);
  for (int n = 0; n <= 10; ++n) {
    for (int i = 0; i < 200; ++i) {
      const double s = rng.uniform();
      double sum = 0.0;
      for (int j = 0; j <= n; ++j) {
        const double b = bernstein(j, n, s);
        CHECK(b >= 0.0);
        CHECK(b <= 1.0);
        sum += b;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("bezier_point examples") {
  const ControlPolygon line{{0, 0}, {10, 0}};
  CHECK(bezier_point(line, 0.0) == Point2{0, 0});
  const auto mid = bezier_point(line, 0.5);
  CHECK(mid.x == doctest::Approx(5.0));
  CHECK(mid.y == doctest::Approx(0.0));

  const ControlPolygon arc{{0, 0}, {5, 10}, {10, 0}};
  const auto oracle = bernstein_sum(arc, 0.5);
  CHECK(oracle.x == doctest::Approx(5.0));
  CHECK(oracle.y == doctest::Approx(5.0));
  const auto got = bezier_point(arc, 0.5);
  CHECK(got.x == doctest::Approx(oracle.x).epsilon(1e-12));
  CHECK(got.y == doctest::Approx(oracle.y).epsilon(1e-12));

  CHECK_THROWS_AS(bezier_point(arc, 1.5), DomainError);
}

TEST_CASE("de Casteljau agrees with the Bernstein sum") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto poly = random_polygon(rng, 8);
    const double s = rng.uniform();
    const auto a = bezier_point(poly, s);
    const auto b = bernstein_sum(poly, s);
    CHECK(std::abs(a.x - b.x) <= 1e-9);
    CHECK(std::abs(a.y - b.y) <= 1e-9);
  }
}

TEST_CASE("bezier endpoint, convex hull and symmetry properties") {
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const auto poly = random_polygon(rng, 6);
    CHECK(bezier_point(poly, 0.0) == poly.front());
    CHECK(bezier_point(poly, 1.0) == poly.back());

    const auto hull = convex_hull({poly.points().begin(), poly.points().end()});
    const double s = rng.uniform();
    const auto p = bezier_point(poly, s);
    CHECK(inside_hull(hull, p, 1e-9));

    const auto q = bezier_point(poly.reversed(), 1.0 - s);
    CHECK(std::abs(p.x - q.x) <= 1e-9);
    CHECK(std::abs(p.y - q.y) <= 1e-9);
  }
}

TEST_CASE("control polygon needs two finite points") {
  CHECK_THROWS_AS(ControlPolygon(std::vector<Point2>{}), DomainError);
  CHECK_THROWS_AS(ControlPolygon({{1, 1}}), DomainError);
  CHECK_THROWS_AS(ControlPolygon({{0, 0}, {std::nan(""), 1}}), DomainError);
  CHECK(ControlPolygon({{0, 0}, {1, 1}}).degree() == 1);
}

TEST_CASE("sample_curve spacing and endpoints") {
  const ControlPolygon arc{{0, 0}, {5, 10}, {10, 0}};
  const auto samples = sample_curve(arc, 11);
  REQUIRE(samples.size() == 11);
  CHECK(samples.front().s == 0.0);
  CHECK(samples.back().s == 1.0);
  CHECK(samples.back().position == arc.back());
  CHECK(samples[5].s == doctest::Approx(0.5));
  CHECK(default_sample_count(arc) == 30);
  CHECK_THROWS_AS(sample_curve(arc, 1), DomainError);
}

TEST_CASE("thin straight stroke is the Bresenham line") {
  // 3x/11 is never a half-integer, so the digital line is unambiguous:
  // pixel (x, round(3x/11)) for x = 0..11.
  const ControlPolygon line{{0, 0}, {11, 3}};
  for (int samples : {2, 20, 200}) {
    const auto mask = rasterize_curve(line, samples, 1);
    std::set<std::pair<int, int>> expected;
    for (int x = 0; x <= 11; ++x) {
      expected.insert({x, static_cast<int>(std::lround(3.0 * x / 11.0))});
    }
    CHECK(pixels(mask) == expected);
  }

  const ControlPolygon steep{{2, 1}, {5, 12}};
  std::set<std::pair<int, int>> expected;
  for (int y = 1; y <= 12; ++y) {
    expected.insert({2 + static_cast<int>(std::lround(3.0 * (y - 1) / 11.0)), y});
  }
  CHECK(pixels(rasterize_curve(steep, 40, 1)) == expected);
}

TEST_CASE("two samples draw the chord between the curve endpoints") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto poly = random_polygon(rng, 5);
    const ControlPolygon chord{bezier_point(poly, 0.0), bezier_point(poly, 1.0)};
    for (int thickness : {1, 3}) {
      CHECK(pixels(rasterize_curve(poly, 2, thickness)) ==
            pixels(rasterize_curve(chord, 2, thickness)));
    }
  }
}

TEST_CASE("rasterized arc stays near the analytic curve") {
  const ControlPolygon arc{{0, 0}, {5, 10}, {10, 0}};
  std::vector<Point2> dense;
  for (int i = 0; i <= 10000; ++i) dense.push_back(bernstein_sum(arc, i / 10000.0));
  for (int thickness : {1, 2, 3, 5}) {
    const auto mask = rasterize_curve(arc, 101, thickness);
    CHECK(mask.count() > 0);
    for (const auto& [x, y] : pixels(mask)) {
      double best = 1e9;
      for (const auto& p : dense) best = std::min(best, std::hypot(x - p.x, y - p.y));
      CHECK(best <= thickness / 2.0 + 1.0);
    }
  }
}

TEST_CASE("mask bounding box lies inside the expanded control box") {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto poly = random_polygon(rng, 6);
    const int thickness = static_cast<int>(rng.uniform_int(1, 6));
    double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
    for (const auto& p : poly.points()) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const auto mask = rasterize_curve(poly, default_sample_count(poly), thickness);
    for (const auto& [x, y] : pixels(mask)) {
      CHECK(x >= x0 - thickness);
      CHECK(x <= x1 + thickness);
      CHECK(y >= y0 - thickness);
      CHECK(y <= y1 + thickness);
    }
  }
}

TEST_CASE("rasterize_curve argument checks") {
  const ControlPolygon line{{0, 0}, {4, 4}};
  CHECK_THROWS_AS(rasterize_curve(line, 1, 1), DomainError);
  CHECK_THROWS_AS(rasterize_curve(line, 2, 0), DomainError);
  const auto mask = rasterize_curve(line, 2, 1);
  CHECK(mask.at(-50, -50) == 0.0f);
  CHECK(mask.at(2, 2) == 1.0f);
}
