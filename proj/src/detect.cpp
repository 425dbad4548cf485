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

#include "sbpr/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sbpr/error.hpp"
#include "sbpr/rng.hpp"

namespace sbpr
{

Mask Mask::zeros(int width, int height)
{
  Mask mask;
  mask.width = width;
  mask.height = height;
  mask.bits.assign(static_cast<std::size_t>(width) * height, 0);
  return mask;
}

std::size_t Mask::set_count() const
{
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<std::int64_t> encode_rle(const Mask & mask)
{
  std::vector<std::int64_t> counts;
  std::uint8_t current = 0;  // runs start with the 0-bit value
  std::int64_t run = 0;
  for (std::uint8_t bit : mask.bits) {
    const std::uint8_t v = bit ? 1 : 0;
    if (v == current) {
      ++run;
    } else {
      counts.push_back(run);
      current = v;
      run = 1;
    }
  }
  counts.push_back(run);
  return counts;
}

Mask decode_rle(const std::vector<std::int64_t> & counts, int width, int height)
{
  if (width <= 0 || height <= 0) {
    raise(ErrorCode::parse, "mask dimensions must be positive");
  }
  const std::int64_t total = static_cast<std::int64_t>(width) * height;
  std::int64_t sum = 0;
  for (std::int64_t c : counts) {
    if (c < 0) {
      raise(ErrorCode::parse, "negative run length in mask code");
    }
    sum += c;
  }
  if (sum != total) {
    raise(
      ErrorCode::parse, "mask run lengths sum to " + std::to_string(sum) + ", expected " +
                          std::to_string(total));
  }

  Mask mask = Mask::zeros(width, height);
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (std::int64_t c : counts) {
    for (std::int64_t i = 0; i < c; ++i) {
      mask.bits[pos++] = value;
    }
    value = value ? 0 : 1;
  }
  return mask;
}

PixelRect enclosing_pixels(const Box & box, int frame_w, int frame_h)
{
  PixelRect rect;
  rect.x0 = std::max(0, static_cast<int>(std::floor(box.x)));
  rect.y0 = std::max(0, static_cast<int>(std::floor(box.y)));
  rect.x1 = std::min(frame_w, static_cast<int>(std::ceil(box.right())));
  rect.y1 = std::min(frame_h, static_cast<int>(std::ceil(box.bottom())));
  if (rect.empty()) {
    rect = PixelRect{0, 0, 0, 0};
  }
  return rect;
}

std::pair<Point2, Point2> head_feet_points(const Mask & mask)
{
  int top = -1;
  int bottom = -1;
  for (int y = 0; y < mask.height && top < 0; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) {
        top = y;
        break;
      }
    }
  }
  if (top < 0) {
    raise(ErrorCode::invalid, "mask has no set bits");
  }
  for (int y = mask.height - 1; y >= 0 && bottom < 0; --y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) {
        bottom = y;
        break;
      }
    }
  }

  auto row_mean_x = [&mask](int y) {
    double sum = 0.0;
    int n = 0;
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) {
        sum += x;
        ++n;
      }
    }
    return sum / n;
  };

  return {
    Point2{row_mean_x(top), static_cast<double>(top)},
    Point2{row_mean_x(bottom), static_cast<double>(bottom)}};
}

std::pair<Point2, Point2> head_feet_points(const Detection & det)
{
  return head_feet_points(det.mask);
}

namespace
{

Mask full_box_mask(const Box & box, int frame_w, int frame_h)
{
  Mask mask = Mask::zeros(frame_w, frame_h);
  const PixelRect rect = enclosing_pixels(box, frame_w, frame_h);
  for (int y = rect.y0; y < rect.y1; ++y) {
    for (int x = rect.x0; x < rect.x1; ++x) {
      mask.set(x, y, true);
    }
  }
  return mask;
}

bool boxes_overlap(const Box & a, const Box & b)
{
  const double ix = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  return ix > 0.0 && iy > 0.0;
}

Box union_box(const Box & a, const Box & b)
{
  const double x0 = std::min(a.x, b.x);
  const double y0 = std::min(a.y, b.y);
  const double x1 = std::max(a.right(), b.right());
  const double y1 = std::max(a.bottom(), b.bottom());
  return Box{x0, y0, x1 - x0, y1 - y0};
}

}  // namespace

std::vector<Detection> oracle_detections(
  const std::vector<PersonAnnotation> & frame_persons, const OracleNoise & noise, int frame_index,
  int frame_width, int frame_height)
{
  std::vector<Detection> dets;
  dets.reserve(frame_persons.size());

  for (const auto & person : frame_persons) {
    const std::uint64_t key = hash_string(
      hash_combine(noise.seed, static_cast<std::uint64_t>(frame_index)), person.person_id);

    if (noise.drop_prob > 0.0) {
      if (to_unit_interval(hash_combine(key, 0xd20bULL)) < noise.drop_prob) {
        continue;
      }
    }

    Box box = ground_truth_box(person.markers);
    if (noise.jitter_px > 0.0) {
      const double j = noise.jitter_px;
      double x0 = box.x + (2.0 * to_unit_interval(hash_combine(key, 1)) - 1.0) * j;
      double y0 = box.y + (2.0 * to_unit_interval(hash_combine(key, 2)) - 1.0) * j;
      double x1 = box.right() + (2.0 * to_unit_interval(hash_combine(key, 3)) - 1.0) * j;
      double y1 = box.bottom() + (2.0 * to_unit_interval(hash_combine(key, 4)) - 1.0) * j;
      x1 = std::max(x1, x0 + 1.0);
      y1 = std::max(y1, y0 + 1.0);
      box = Box{x0, y0, x1 - x0, y1 - y0};
    }

    Detection det;
    det.box = box;
    det.mask = full_box_mask(box, frame_width, frame_height);
    det.source_person_id = person.person_id;
    det.score = 1.0;
    if (det.mask.set_count() == 0) {
      continue;  // box entirely outside the frame
    }
    dets.push_back(std::move(det));
  }

  if (noise.merge_overlapping && dets.size() > 1) {
    // Grow components greedily in input order; the merged detection keeps the
    // identity of its largest member.
    std::vector<Detection> merged;
    std::vector<bool> used(dets.size(), false);
    for (std::size_t i = 0; i < dets.size(); ++i) {
      if (used[i]) {
        continue;
      }
      used[i] = true;
      Detection acc = dets[i];
      double best_area = acc.box.area();
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t j = i + 1; j < dets.size(); ++j) {
          if (used[j] || !boxes_overlap(acc.box, dets[j].box)) {
            continue;
          }
          used[j] = true;
          grew = true;
          if (dets[j].box.area() > best_area) {
            best_area = dets[j].box.area();
            acc.source_person_id = dets[j].source_person_id;
          }
          acc.box = union_box(acc.box, dets[j].box);
          acc.score = std::max(acc.score, dets[j].score);
          for (std::size_t b = 0; b < acc.mask.bits.size(); ++b) {
            acc.mask.bits[b] = acc.mask.bits[b] || dets[j].mask.bits[b];
          }
        }
      }
      merged.push_back(std::move(acc));
    }
    dets = std::move(merged);
  }

  return dets;
}

OracleDetectionProvider::OracleDetectionProvider(const SequenceAnnotation & seq, OracleNoise noise)
: seq_(&seq), noise_(noise)
{
}

std::vector<Detection> OracleDetectionProvider::detections_for(int frame_index) const
{
  if (frame_index < 0 || frame_index >= static_cast<int>(seq_->frames.size())) {
    return {};
  }
  return oracle_detections(
    seq_->frames[frame_index], noise_, frame_index, seq_->image_width, seq_->image_height);
}

StreamDetectionProvider::StreamDetectionProvider(
  std::map<int, std::vector<Detection>> by_frame, double min_score)
{
  for (auto & [frame, dets] : by_frame) {
    std::vector<Detection> kept;
    for (auto & det : dets) {
      if (det.score >= min_score) {
        kept.push_back(std::move(det));
      }
    }
    if (!kept.empty()) {
      by_frame_.emplace(frame, std::move(kept));
    }
  }
}

std::vector<Detection> StreamDetectionProvider::detections_for(int frame_index) const
{
  auto it = by_frame_.find(frame_index);
  return it == by_frame_.end() ? std::vector<Detection>{} : it->second;
}

}  // namespace sbpr
