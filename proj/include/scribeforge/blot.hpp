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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scribeforge/geometry.hpp"
#include "scribeforge/image.hpp"
#include "scribeforge/rng.hpp"

namespace scribeforge::blot {

// Knobs of the strikethrough generator. Defaults are the values the
// augmentation was tuned with on historical handwriting.
struct BlotParams {
  int min_h = 50;
  int max_h = 100;
  int min_w = 10;
  int max_w = 50;
  // Largest end-to-end vertical drift of one stroke, in pixels.
  int incline = 15;
  // Probability that a band emits a control point.
  double intensity = 0.9;
  // Stroke opacity: 1 paints solid ink, 0 leaves the image untouched.
  double transparency = 0.95;
  int count_min = 1;
  int count_max = 11;
  // Probability that an image receives any blots at all.
  double proba = 0.5;

  // Stroke diameter in pixels.
  int thickness = 3;
  // Horizontal bands per region; one candidate control point per band.
  int bands = 6;
  // Probability that an emitted point is repeated to pull the curve
  // into a loop.
  double duplicate_proba = 0.2;
  // Curve samples per control point when rasterizing.
  int samples_per_point = 10;

  // Throws DomainError on inconsistent settings.
  void validate() const;

  // JSON object keyed by the field names above. Keys absent from `json`
  // keep their value from `base`; unknown keys are rejected.
  static BlotParams from_json(std::string_view json, const BlotParams& base);
  static BlotParams from_json(std::string_view json) {
    return from_json(json, BlotParams{});
  }
  std::string to_json() const;
};

struct BlotRegion {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  friend bool operator==(const BlotRegion&, const BlotRegion&) = default;
};

// Picks the strikethrough rectangle. Returns nullopt when the image is
// narrower than min_w, in which case the augmentation is skipped.
std::optional<BlotRegion> choose_region(const LineImage& image,
                                        const BlotParams& params, Rng& rng);

geometry::ControlPolygon generate_blot_points(const BlotRegion& region,
                                              const BlotParams& params,
                                              Rng& rng);

// Darkens `image` in place along the curve: out = round((1 - t * c) * src).
// out = round((1 - opacity * coverage) * in) over the mask, clipped to the
// image and, when given, to `clip`.
void composite_stroke(LineImage& image, const geometry::CoverageMask& mask,
                      double opacity);
void composite_stroke(LineImage& image, const geometry::CoverageMask& mask,
                      double opacity, const BlotRegion& clip);

enum class BlotStatus {
  kApplied,
  kNotDrawn,      // the proba draw or a zero count skipped augmentation
  kImageTooSmall  // narrower than min_w
};

struct BlotTrace {
  BlotStatus status = BlotStatus::kNotDrawn;
  std::vector<BlotRegion> regions;
  std::vector<geometry::ControlPolygon> curves;
};

struct BlotResult {
  LineImage image;
  BlotTrace trace;
};

// Full augmentation with a record of what was drawn. Random draws happen in
// a fixed order: the proba draw, the blot count, then choose_region and
// generate_blot_points for each blot in turn.
BlotResult apply_blot_traced(const LineImage& image, const BlotParams& params,
                             Rng& rng);

LineImage apply_blot(const LineImage& image, const BlotParams& params,
                     Rng& rng);

}  // namespace scribeforge::blot
