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

#include "sbpr/image.hpp"

#include <fstream>
#include <limits>

#include "sbpr/error.hpp"
#include "sbpr/patch.hpp"

namespace sbpr
{

Image Image::filled(int width, int height, Rgb color)
{
  Image image;
  image.width = width;
  image.height = height;
  image.rgb.resize(static_cast<std::size_t>(3) * width * height);
  for (std::size_t i = 0; i + 2 < image.rgb.size(); i += 3) {
    image.rgb[i] = color[0];
    image.rgb[i + 1] = color[1];
    image.rgb[i + 2] = color[2];
  }
  return image;
}

namespace
{

// Reads one whitespace/comment-separated token of a pixmap header.
int read_header_int(std::istream & in, const std::string & path)
{
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = 0;
  if (!(in >> value)) {
    raise(ErrorCode::parse, "malformed pixmap header in " + path);
  }
  return value;
}

}  // namespace

Image read_ppm(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorCode::io, "cannot open image file: " + path);
  }
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (magic != "P6") {
    raise(ErrorCode::parse, "not a binary pixmap (P6): " + path);
  }
  const int width = read_header_int(in, path);
  const int height = read_header_int(in, path);
  const int maxval = read_header_int(in, path);
  if (width <= 0 || height <= 0) {
    raise(ErrorCode::parse, "non-positive pixmap dimensions in " + path);
  }
  if (maxval != 255) {
    raise(ErrorCode::parse, "unsupported pixmap maxval (want 255) in " + path);
  }
  in.get();  // single whitespace byte before the raster

  Image image;
  image.width = width;
  image.height = height;
  image.rgb.resize(static_cast<std::size_t>(3) * width * height);
  in.read(reinterpret_cast<char *>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.rgb.size())) {
    raise(ErrorCode::parse, "truncated pixmap raster in " + path);
  }
  return image;
}

void write_ppm(const Image & image, const std::string & path)
{
  if (image.width <= 0 || image.height <= 0) {
    raise(ErrorCode::invalid, "cannot write empty image to " + path);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorCode::io, "cannot open image file for writing: " + path);
  }
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char *>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
  if (!out) {
    raise(ErrorCode::io, "failed writing image file: " + path);
  }
}

void gamma_adjust_image(Image & image, double gamma)
{
  const auto lut = gamma_lut(gamma);
  for (auto & v : image.rgb) {
    v = lut[v];
  }
}

}  // namespace sbpr
