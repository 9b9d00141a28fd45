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

#include "scribeforge/blot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "json.hpp"
#include "scribeforge/error.hpp"

namespace scribeforge::blot {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError("BlotParams: " + message);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void BlotParams::validate() const {
  require(min_h >= 1 && min_h <= max_h, "need 1 <= min_h <= max_h");
  require(min_w >= 1 && min_w <= max_w, "need 1 <= min_w <= max_w");
  require(incline >= 0, "incline must be >= 0");
  require(is_probability(intensity), "intensity must be in [0, 1]");
  require(is_probability(transparency), "transparency must be in [0, 1]");
  require(count_min >= 0 && count_min <= count_max,
          "need 0 <= count_min <= count_max");
  require(is_probability(proba), "proba must be in [0, 1]");
  require(thickness >= 1, "thickness must be >= 1");
  require(bands >= 2, "bands must be >= 2");
  require(is_probability(duplicate_proba), "duplicate_proba must be in [0, 1]");
  require(samples_per_point >= 1, "samples_per_point must be >= 1");
}

BlotParams BlotParams::from_json(std::string_view text,
                                 const BlotParams& base) {
  BlotParams p = base;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw FormatError("blot parameters must be an object");
    for (const auto& [key, value] : j.items()) {
      if (key == "min_h") p.min_h = value.get<int>();
      else if (key == "max_h") p.max_h = value.get<int>();
      else if (key == "min_w") p.min_w = value.get<int>();
      else if (key == "max_w") p.max_w = value.get<int>();
      else if (key == "incline") p.incline = value.get<int>();
      else if (key == "intensity") p.intensity = value.get<double>();
      else if (key == "transparency") p.transparency = value.get<double>();
      else if (key == "count_min") p.count_min = value.get<int>();
      else if (key == "count_max") p.count_max = value.get<int>();
      else if (key == "proba") p.proba = value.get<double>();
      else if (key == "thickness") p.thickness = value.get<int>();
      else if (key == "bands") p.bands = value.get<int>();
      else if (key == "duplicate_proba") p.duplicate_proba = value.get<double>();
      else if (key == "samples_per_point") p.samples_per_point = value.get<int>();
      else throw FormatError("unknown blot parameter '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("blot parameters: ") + e.what());
  }
  p.validate();
  return p;
}

std::string BlotParams::to_json() const {
  nlohmann::json j;
  j["min_h"] = min_h;
  j["max_h"] = max_h;
  j["min_w"] = min_w;
  j["max_w"] = max_w;
  j["incline"] = incline;
  j["intensity"] = intensity;
  j["transparency"] = transparency;
  j["count_min"] = count_min;
  j["count_max"] = count_max;
  j["proba"] = proba;
  j["thickness"] = thickness;
  j["bands"] = bands;
  j["duplicate_proba"] = duplicate_proba;
  j["samples_per_point"] = samples_per_point;
  return j.dump();
}

std::optional<BlotRegion> choose_region(const LineImage& image,
                                        const BlotParams& params, Rng& rng) {
  const int W = image.width();
  const int H = image.height();
  if (W < params.min_w) return std::nullopt;

  const int w = static_cast<int>(
      rng.uniform_int(params.min_w, std::min(params.max_w, W)));
  const int h = std::min(
      H, static_cast<int>(rng.uniform_int(params.min_h, params.max_h)));
  const int x0 = static_cast<int>(rng.uniform_int(0, W - w));
  const double jitter = rng.uniform(-h / 4.0, h / 4.0);
  const double top = H / 2.0 + jitter - h / 2.0;
  const int y0 = std::clamp(static_cast<int>(std::lround(top)), 0, H - h);
  return BlotRegion{x0, y0, x0 + w, y0 + h};
}

geometry::ControlPolygon generate_blot_points(const BlotRegion& region,
                                              const BlotParams& params,
                                              Rng& rng) {
  if (region.width() < 1 || region.height() < 1) {
    throw DomainError("generate_blot_points: empty region");
  }
  const double slope = rng.uniform(-params.incline, params.incline);
  const int bands = params.bands;

  std::vector<bool> emit(bands);
  int emitted = 0;
  for (int b = 0; b < bands; ++b) {
    emit[b] = rng.bernoulli(params.intensity);
    emitted += emit[b];
  }
  if (emitted < 2) {
    emit.front() = true;
    emit.back() = true;
  }

  const double band_w = static_cast<double>(region.width()) / bands;
  const double x_max = region.x1 - 1;
  const double y_max = region.y1 - 1;
  std::vector<geometry::Point2> points;
  for (int b = 0; b < bands; ++b) {
    if (!emit[b]) continue;
    const double bx0 = region.x0 + b * band_w;
    const double x = std::min(rng.uniform(bx0, bx0 + band_w), x_max);
    // Drift is centred so the stroke tilts around the region's middle.
    const double drift = slope * ((x - region.x0) / region.width() - 0.5);
    const double y = std::clamp(rng.uniform(region.y0, region.y1) + drift,
                                static_cast<double>(region.y0), y_max);
    points.push_back({x, y});
    if (rng.bernoulli(params.duplicate_proba)) points.push_back({x, y});
  }
  return geometry::ControlPolygon(std::move(points));
}

void composite_stroke(LineImage& image, const geometry::CoverageMask& mask,
                      double opacity) {
  composite_stroke(image, mask, opacity,
                   BlotRegion{0, 0, image.width(), image.height()});
}

void composite_stroke(LineImage& image, const geometry::CoverageMask& mask,
                      double opacity, const BlotRegion& clip) {
  const int x_begin = std::max({0, mask.x0(), clip.x0});
  const int y_begin = std::max({0, mask.y0(), clip.y0});
  const int x_end =
      std::min({image.width(), mask.x0() + mask.width(), clip.x1});
  const int y_end =
      std::min({image.height(), mask.y0() + mask.height(), clip.y1});
  for (int y = y_begin; y < y_end; ++y) {
    for (int x = x_begin; x < x_end; ++x) {
      const float c = mask.at(x, y);
      if (c <= 0.0f) continue;
      auto& px = image.at(x, y);
      px = static_cast<std::uint8_t>(std::lround((1.0 - opacity * c) * px));
    }
  }
}

BlotResult apply_blot_traced(const LineImage& image, const BlotParams& params,
                             Rng& rng) {
  params.validate();
  BlotResult result{image, {}};
  if (!rng.bernoulli(params.proba)) return result;
  const auto count = rng.uniform_int(params.count_min, params.count_max);
  if (count == 0) return result;

  for (std::int64_t i = 0; i < count; ++i) {
    const auto region = choose_region(image, params, rng);
    if (!region) {
      result.image = image;
      result.trace = {BlotStatus::kImageTooSmall, {}, {}};
      return result;
    }
    auto curve = generate_blot_points(*region, params, rng);
    const int samples = std::max(
        2, params.samples_per_point * static_cast<int>(curve.size()));
    const auto mask = geometry::rasterize_curve(curve, samples, params.thickness);
    // Thick strokes are clipped so the blot never leaves its box.
    composite_stroke(result.image, mask, params.transparency, *region);
    result.trace.regions.push_back(*region);
    result.trace.curves.push_back(std::move(curve));
  }
  result.trace.status = BlotStatus::kApplied;
  return result;
}

LineImage apply_blot(const LineImage& image, const BlotParams& params,
                     Rng& rng) {
  return apply_blot_traced(image, params, rng).image;
}

}  // namespace scribeforge::blot
