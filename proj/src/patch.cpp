// Copyright 2026 The sbpr Authors
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

#include "sbpr/patch.hpp"

#include <algorithm>
#include <cmath>

#include "sbpr/error.hpp"

namespace sbpr
{

Band torso_band(const std::string & torso_type)
{
  if (!AttributeTaxonomy::get().is_torso_type(torso_type)) {
    raise(ErrorCode::taxonomy, "torso type not in taxonomy: \"" + torso_type + "\"");
  }
  if (torso_type == "long sleeve" || torso_type == "short sleeve") {
    return Band{0.20, 0.48};
  }
  if (torso_type == "no sleeve") {
    return Band{0.25, 0.48};
  }
  if (torso_type == "indian kurta/dress") {
    return Band{0.20, 0.56};
  }
  return Band{0.20, 0.50};  // static fallback for "unknown"
}

Band leg_band(const std::string & leg_type)
{
  if (!AttributeTaxonomy::get().is_leg_type(leg_type)) {
    raise(ErrorCode::taxonomy, "leg type not in taxonomy: \"" + leg_type + "\"");
  }
  if (leg_type == "long pants" || leg_type == "dress") {
    return Band{0.56, 0.84};
  }
  if (leg_type == "skirt") {
    return Band{0.52, 0.64};
  }
  if (leg_type == "long shorts") {
    return Band{0.56, 0.68};
  }
  if (leg_type == "short shorts") {
    return Band{0.52, 0.62};
  }
  if (leg_type == "indian kurta/dress") {
    return Band{0.75, 0.90};
  }
  return Band{0.56, 0.84};  // "unknown": widest common leg band
}

BandRows band_rows(const Box & box, const Band & band)
{
  BandRows rows;
  rows.begin = static_cast<int>(std::floor(box.y + band.r1 * box.h));
  rows.end = static_cast<int>(std::floor(box.y + band.r2 * box.h));
  return rows;
}

Patch extract_patch(const Image & frame, const Detection & det, const Band & band)
{
  if (!(band.r1 >= 0.0 && band.r1 < band.r2 && band.r2 <= 1.0)) {
    raise(ErrorCode::invalid, "band fractions must satisfy 0 <= r1 < r2 <= 1");
  }

  Patch patch;
  patch.band = band;

  // Clip the box to the frame before banding.
  const double x0 = std::max(det.box.x, 0.0);
  const double y0 = std::max(det.box.y, 0.0);
  const double x1 = std::min(det.box.right(), static_cast<double>(frame.width));
  const double y1 = std::min(det.box.bottom(), static_cast<double>(frame.height));
  if (!(x1 > x0 && y1 > y0)) {
    patch.source_box = Box{0, 0, 0, 0};
    return patch;
  }
  const Box clipped{x0, y0, x1 - x0, y1 - y0};
  patch.source_box = clipped;

  const BandRows rows = band_rows(clipped, band);
  const PixelRect cols = enclosing_pixels(clipped, frame.width, frame.height);
  const int y_begin = std::max(rows.begin, cols.y0);
  const int y_end = std::min(rows.end, cols.y1);

  for (int y = y_begin; y < y_end; ++y) {
    for (int x = cols.x0; x < cols.x1; ++x) {
      if (x >= det.mask.width || y >= det.mask.height || !det.mask.at(x, y)) {
        continue;
      }
      patch.pixels.push_back(frame.pixel(x, y));
      patch.positions.emplace_back(x, y);
    }
  }
  return patch;
}

std::array<std::uint8_t, 256> gamma_lut(double gamma)
{
  if (!(gamma > 0.0)) {
    raise(ErrorCode::invalid, "gamma must be positive");
  }
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    const double mapped = 255.0 * std::pow(v / 255.0, gamma);
    lut[v] = static_cast<std::uint8_t>(std::lround(mapped));
  }
  return lut;
}

Patch gamma_adjust(const Patch & patch, double gamma)
{
  const auto lut = gamma_lut(gamma);
  Patch out = patch;
  for (auto & px : out.pixels) {
    px = {lut[px[0]], lut[px[1]], lut[px[2]]};
  }
  return out;
}

}  // namespace sbpr
