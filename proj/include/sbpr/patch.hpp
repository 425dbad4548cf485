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

#ifndef SBPR_PATCH_HPP_
#define SBPR_PATCH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sbpr/detect.hpp"
#include "sbpr/image.hpp"
#include "sbpr/model.hpp"

namespace sbpr
{

// Horizontal band inside a person box, as fractions of box height measured
// from the box top.
struct Band
{
  double r1 = 0.0;
  double r2 = 1.0;
  bool operator==(const Band &) const = default;
};

// Clothing-type-dependent band for the torso region. "unknown" falls back to
// the static 20%-50% band.
Band torso_band(const std::string & torso_type);

// Clothing-type-dependent band for the leg region.
Band leg_band(const std::string & leg_type);

struct Patch
{
  std::vector<Rgb> pixels;
  std::vector<std::pair<int, int>> positions;  // frame coordinates, parallel to pixels
  Box source_box;
  Band band;
};

struct BandRows
{
  int begin = 0;
  int end = 0;  // half-open
};

// Band rows are floor(box.y + r * box.h), half-open in r1..r2.
BandRows band_rows(const Box & box, const Band & band);

// Mask-restricted pixels of the band rows. The box is clipped to the frame
// before banding; an empty result is a valid (empty) patch.
Patch extract_patch(const Image & frame, const Detection & det, const Band & band);

std::array<std::uint8_t, 256> gamma_lut(double gamma);

// Per channel v -> round(255 * (v/255)^gamma); positions are unchanged.
Patch gamma_adjust(const Patch & patch, double gamma);

}  // namespace sbpr

#endif  // SBPR_PATCH_HPP_
