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

#ifndef SBPR_DETECT_HPP_
#define SBPR_DETECT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sbpr/model.hpp"

namespace sbpr
{

// Frame-aligned binary mask (not box-aligned): bit (x, y) indexes the frame
// pixel grid directly.
struct Mask
{
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // width * height entries, 0 or 1

  static Mask zeros(int width, int height);

  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool value)
  {
    bits[static_cast<std::size_t>(y) * width + x] = value ? 1 : 0;
  }
  std::size_t set_count() const;

  bool operator==(const Mask &) const = default;
};

// Run-length code: alternating counts of 0-bits then 1-bits in row-major
// order, always starting with the 0-run (which may be 0).
std::vector<std::int64_t> encode_rle(const Mask & mask);
Mask decode_rle(const std::vector<std::int64_t> & counts, int width, int height);

struct Detection
{
  Box box;
  Mask mask;
  std::optional<std::string> source_person_id;  // set by oracle-style providers
  double score = 1.0;
};

// Integer pixel rectangle [x0, x1) x [y0, y1).
struct PixelRect
{
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

// Smallest pixel-grid rectangle covering the real box, clipped to the frame.
PixelRect enclosing_pixels(const Box & box, int frame_w, int frame_h);

// Head = (mean x of set bits in the topmost set row, that row's y),
// feet = the same over the bottommost set row.
std::pair<Point2, Point2> head_feet_points(const Mask & mask);
std::pair<Point2, Point2> head_feet_points(const Detection & det);

struct OracleNoise
{
  std::uint64_t seed = 0;
  double jitter_px = 0.0;       // each box edge moves by a uniform offset in [-j, j]
  double drop_prob = 0.0;       // each detection dropped independently
  bool merge_overlapping = false;  // overlapping boxes collapse into one detection
};

// Ground-truth-backed detections: per person one full-box mask detection with
// the identity attached. All randomness is a pure function of
// (noise.seed, frame_index, person_id), so streams are reproducible.
std::vector<Detection> oracle_detections(
  const std::vector<PersonAnnotation> & frame_persons, const OracleNoise & noise, int frame_index,
  int frame_width, int frame_height);

class DetectionProvider
{
public:
  virtual ~DetectionProvider() = default;
  virtual std::vector<Detection> detections_for(int frame_index) const = 0;
};

class OracleDetectionProvider : public DetectionProvider
{
public:
  OracleDetectionProvider(const SequenceAnnotation & seq, OracleNoise noise);
  std::vector<Detection> detections_for(int frame_index) const override;

private:
  const SequenceAnnotation * seq_;
  OracleNoise noise_;
};

// Detections loaded from a per-frame record stream, filtered on score.
class StreamDetectionProvider : public DetectionProvider
{
public:
  StreamDetectionProvider(std::map<int, std::vector<Detection>> by_frame, double min_score);
  std::vector<Detection> detections_for(int frame_index) const override;

private:
  std::map<int, std::vector<Detection>> by_frame_;
};

}  // namespace sbpr

#endif  // SBPR_DETECT_HPP_
