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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sbpr/error.hpp"
#include "sbpr/patch.hpp"
#include "sbpr/rng.hpp"
#include "support.hpp"

using namespace sbpr;

namespace
{

Detection full_mask_detection(const Box & box, int frame_w, int frame_h)
{
  Detection det;
  det.box = box;
  det.mask = Mask::zeros(frame_w, frame_h);
  const PixelRect rect = enclosing_pixels(box, frame_w, frame_h);
  for (int y = rect.y0; y < rect.y1; ++y) {
    for (int x = rect.x0; x < rect.x1; ++x) {
      det.mask.set(x, y, true);
    }
  }
  return det;
}

}  // namespace

TEST_CASE("torso band table")
{
  CHECK(torso_band("long sleeve") == Band{0.20, 0.48});
  CHECK(torso_band("short sleeve") == Band{0.20, 0.48});
  CHECK(torso_band("no sleeve") == Band{0.25, 0.48});
  CHECK(torso_band("indian kurta/dress") == Band{0.20, 0.56});
  CHECK(torso_band("unknown") == Band{0.20, 0.50});
  CHECK_THROWS_AS(torso_band("cape"), Error);
}

TEST_CASE("leg band table")
{
  CHECK(leg_band("long pants") == Band{0.56, 0.84});
  CHECK(leg_band("dress") == Band{0.56, 0.84});
  CHECK(leg_band("skirt") == Band{0.52, 0.64});
  CHECK(leg_band("long shorts") == Band{0.56, 0.68});
  CHECK(leg_band("short shorts") == Band{0.52, 0.62});
  CHECK(leg_band("indian kurta/dress") == Band{0.75, 0.90});
  CHECK_THROWS_AS(leg_band("stilts"), Error);
}

TEST_CASE("band rows arithmetic")
{
  // box 100 rows tall starting at row 0: 20%..48% is rows 20..47 inclusive.
  const BandRows rows = band_rows(Box{0, 0, 40, 100}, Band{0.20, 0.48});
  CHECK(rows.begin == 20);
  CHECK(rows.end == 48);
  CHECK(rows.end - rows.begin == 28);
}

TEST_CASE("extract_patch")
{
  const Image blue = Image::filled(64, 120, Rgb{10, 20, 200});

  SUBCASE("full mask over a uniform image")
  {
    const Box box{8, 10, 20, 100};
    const Detection det = full_mask_detection(box, 64, 120);
    const Patch patch = extract_patch(blue, det, Band{0.20, 0.48});
    // 28 band rows x 20 columns
    CHECK(patch.pixels.size() == 28 * 20);
    for (const Rgb & px : patch.pixels) {
      CHECK(px == Rgb{10, 20, 200});
    }
  }
  SUBCASE("mask empty inside the band")
  {
    const Box box{8, 10, 20, 100};
    Detection det = full_mask_detection(box, 64, 120);
    const BandRows rows = band_rows(box, Band{0.20, 0.48});
    for (int y = rows.begin; y < rows.end; ++y) {
      for (int x = 0; x < 64; ++x) {
        det.mask.set(x, y, false);
      }
    }
    const Patch patch = extract_patch(blue, det, Band{0.20, 0.48});
    CHECK(patch.pixels.empty());
  }
  SUBCASE("boxes reaching outside the frame are clipped")
  {
    const Box box{-10, -20, 40, 200};
    const Detection det = full_mask_detection(box, 64, 120);
    const Patch patch = extract_patch(blue, det, Band{0.20, 0.50});
    CHECK(!patch.pixels.empty());
    for (const auto & [x, y] : patch.positions) {
      CHECK(x >= 0);
      CHECK(x < 64);
      CHECK(y >= 0);
      CHECK(y < 120);
    }
  }
  SUBCASE("patch positions lie inside band rows and mask")
  {
    RandomStream rng(31);
    for (int trial = 0; trial < 100; ++trial) {
      const Box box{rng.next_in(0, 40), rng.next_in(0, 40), rng.next_in(8, 24), rng.next_in(20, 70)};
      Detection det;
      det.box = box;
      det.mask = test::random_mask(rng, 64, 120, 0.5);
      const Band band = torso_band("no sleeve");
      const Patch patch = extract_patch(blue, det, band);

      // independent enumeration of the expected pixel set
      std::set<std::pair<int, int>> expected;
      const BandRows rows = band_rows(box, band);
      const PixelRect rect = enclosing_pixels(box, 64, 120);
      for (int y = std::max(rows.begin, rect.y0); y < std::min(rows.end, rect.y1); ++y) {
        for (int x = rect.x0; x < rect.x1; ++x) {
          if (det.mask.at(x, y)) {
            expected.insert({x, y});
          }
        }
      }
      const std::set<std::pair<int, int>> got(patch.positions.begin(), patch.positions.end());
      CHECK(got == expected);
    }
  }
  SUBCASE("adaptive no-sleeve band never beats the static band's pixel count")
  {
    RandomStream rng(37);
    for (int trial = 0; trial < 50; ++trial) {
      const Box box{rng.next_in(0, 30), rng.next_in(0, 30), rng.next_in(8, 30), rng.next_in(30, 80)};
      Detection det;
      det.box = box;
      det.mask = test::random_mask(rng, 64, 120, 0.6);
      const Patch adaptive = extract_patch(blue, det, torso_band("no sleeve"));
      const Patch fixed = extract_patch(blue, det, torso_band("unknown"));
      CHECK(adaptive.pixels.size() <= fixed.pixels.size());
    }
  }
}

TEST_CASE("gamma adjustment")
{
  Patch patch;
  patch.pixels = {{0, 64, 255}, {32, 128, 200}};
  patch.positions = {{0, 0}, {1, 0}};

  SUBCASE("gamma 1 is the identity")
  {
    const Patch out = gamma_adjust(patch, 1.0);
    CHECK(out.pixels == patch.pixels);
  }
  SUBCASE("0 and 255 are fixed points of every gamma")
  {
    for (double gamma : {0.7, 1.2, 1.5, 3.0}) {
      const Patch out = gamma_adjust(patch, gamma);
      CHECK(out.pixels[0][0] == 0);
      CHECK(out.pixels[0][2] == 255);
    }
  }
  SUBCASE("hand-evaluated value")
  {
    // 255 * (64/255)^0.7 = 96.89 -> 97
    const Patch out = gamma_adjust(patch, 0.7);
    CHECK(out.pixels[0][1] == 97);
  }
  SUBCASE("monotone in the input value")
  {
    for (double gamma : {0.7, 1.2, 1.5}) {
      const auto lut = gamma_lut(gamma);
      for (int v = 1; v < 256; ++v) {
        CHECK(lut[v] >= lut[v - 1]);
      }
    }
  }
  SUBCASE("rejects non-positive gamma")
  {
    CHECK_THROWS_AS(gamma_adjust(patch, 0.0), Error);
  }
}
