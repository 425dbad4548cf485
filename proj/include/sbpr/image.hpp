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

#ifndef SBPR_IMAGE_HPP_
#define SBPR_IMAGE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sbpr
{

using Rgb = std::array<std::uint8_t, 3>;

// 8-bit RGB raster, row-major, interleaved channels.
struct Image
{
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 * width * height bytes

  static Image filled(int width, int height, Rgb color);

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

  Rgb pixel(int x, int y) const
  {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }

  void set_pixel(int x, int y, Rgb color)
  {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
    rgb[i] = color[0];
    rgb[i + 1] = color[1];
    rgb[i + 2] = color[2];
  }

  bool operator==(const Image &) const = default;
};

// Binary portable pixmap (P6, maxval 255). The writer emits a fixed header
// layout so identical images produce identical bytes.
Image read_ppm(const std::string & path);
void write_ppm(const Image & image, const std::string & path);

// Per-channel v -> round(255 * (v/255)^gamma), whole frame.
void gamma_adjust_image(Image & image, double gamma);

}  // namespace sbpr

#endif  // SBPR_IMAGE_HPP_
