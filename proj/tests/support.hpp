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

// Shared fixtures: deterministic camera builders, random generators and the
// brute-force oracles the suites compare against. Oracles here never call
// the implementation path they check.

#ifndef SBPR_TESTS_SUPPORT_HPP_
#define SBPR_TESTS_SUPPORT_HPP_

#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sbpr/attr.hpp"
#include "sbpr/calib.hpp"
#include "sbpr/cascade.hpp"
#include "sbpr/detect.hpp"
#include "sbpr/model.hpp"
#include "sbpr/rng.hpp"

namespace sbpr::test
{

class TempDir
{
public:
  TempDir()
  {
    static std::uint64_t counter = 0x5eedULL;
    counter = splitmix64(counter);
    path_ = (std::filesystem::temp_directory_path() /
             ("sbpr_test_" + std::to_string(counter & 0xffffffffULL)))
              .string();
    std::filesystem::create_directories(path_);
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::string & path() const { return path_; }
  std::string file(const std::string & name) const
  {
    return (std::filesystem::path(path_) / name).string();
  }

private:
  std::string path_;
};

// Frontal camera: identity rotation, optical axis hitting the world origin
// plane head-on. Matches hand-computable projection arithmetic.
inline TsaiCamera axis_camera(double z_cm = 500.0, double f_mm = 10.0)
{
  TsaiCamera cam;
  cam.translation_cm = Eigen::Vector3d(0.0, 0.0, z_cm);
  cam.focal_mm = f_mm;
  cam.cx_px = 320.0;
  cam.cy_px = 240.0;
  cam.image_width = 640;
  cam.image_height = 480;
  return cam;
}

// Surveillance-style camera at C looking toward L, world Z up, image y down.
inline TsaiCamera look_at_camera(
  const Eigen::Vector3d & position_cm, const Eigen::Vector3d & look_at_cm, int width = 640,
  int height = 480, double f_mm = 8.0, double kappa1 = 0.0, double sx = 1.0)
{
  const Eigen::Vector3d zc = (look_at_cm - position_cm).normalized();
  Eigen::Vector3d xc = zc.cross(Eigen::Vector3d(0.0, 0.0, 1.0));
  if (xc.norm() < 1e-9) {
    xc = Eigen::Vector3d(1.0, 0.0, 0.0);
  } else {
    xc.normalize();
  }
  const Eigen::Vector3d yc = zc.cross(xc);

  TsaiCamera cam;
  cam.rotation.row(0) = xc;
  cam.rotation.row(1) = yc;
  cam.rotation.row(2) = zc;
  cam.translation_cm = -(cam.rotation * position_cm);
  cam.focal_mm = f_mm;
  cam.kappa1_per_mm2 = kappa1;
  cam.cx_px = width / 2.0;
  cam.cy_px = height / 2.0;
  cam.sx = sx;
  cam.image_width = width;
  cam.image_height = height;
  return cam;
}

struct RandomCamera
{
  TsaiCamera cam;
  Eigen::Vector3d position;
  Eigen::Vector3d look_at;
};

inline RandomCamera random_camera(RandomStream & rng, bool with_distortion)
{
  const Eigen::Vector3d position(
    rng.next_in(-300.0, 300.0), rng.next_in(-300.0, 300.0), rng.next_in(250.0, 650.0));
  const double angle = rng.next_in(0.0, 6.283185307179586);
  const double dist = rng.next_in(300.0, 900.0);
  const Eigen::Vector3d look_at(
    position.x() + dist * std::cos(angle), position.y() + dist * std::sin(angle), 0.0);
  const double f = rng.next_in(4.0, 16.0);
  const double kappa = with_distortion ? rng.next_in(-2e-4, 0.0) : 0.0;
  const double sx = rng.next_in(0.9, 1.1);
  return {look_at_camera(position, look_at, 640, 480, f, kappa, sx), position, look_at};
}

// Markers whose ground-truth box is exactly `box`.
inline BodyMarkers markers_for_box(const Box & box)
{
  BodyMarkers m;
  m.head = {box.x + 0.5 * box.w, box.y};
  m.neck_left = {box.x + 0.2 * box.w, box.y + 0.10 * box.h};
  m.neck_right = {box.x + 0.8 * box.w, box.y + 0.10 * box.h};
  m.shoulder_left = {box.x, box.y + 0.18 * box.h};
  m.shoulder_right = {box.x + box.w, box.y + 0.18 * box.h};
  m.waist_left = {box.x + 0.1 * box.w, box.y + 0.5 * box.h};
  m.waist_right = {box.x + 0.9 * box.w, box.y + 0.5 * box.h};
  m.foot_left = {box.x + 0.1 * box.w, box.y + box.h};
  m.foot_right = {box.x + 0.9 * box.w, box.y + box.h};
  return m;
}

inline PersonAnnotation person_at(
  const std::string & id, const Box & box, std::map<std::string, std::string> attributes = {})
{
  PersonAnnotation person;
  person.person_id = id;
  person.markers = markers_for_box(box);
  person.attributes = std::move(attributes);
  return person;
}

inline SequenceAnnotation simple_sequence(
  std::vector<std::vector<PersonAnnotation>> frames, const std::string & target_id,
  int width = 640, int height = 480)
{
  SequenceAnnotation seq;
  seq.sequence_id = "test_seq";
  seq.difficulty = "easy";
  seq.frame_count = static_cast<int>(frames.size());
  seq.target_person_id = target_id;
  seq.image_width = width;
  seq.image_height = height;
  seq.frames = std::move(frames);
  return seq;
}

// Exact area-counting IoU for boxes on a quarter-pixel lattice: scales by 4
// and walks unit cells one by one.
inline double grid_iou_oracle(const Box & a, const Box & b)
{
  auto snap = [](double v) { return static_cast<long>(std::lround(v * 4.0)); };
  const long ax0 = snap(a.x);
  const long ay0 = snap(a.y);
  const long ax1 = snap(a.right());
  const long ay1 = snap(a.bottom());
  const long bx0 = snap(b.x);
  const long by0 = snap(b.y);
  const long bx1 = snap(b.right());
  const long by1 = snap(b.bottom());

  long in_a = 0;
  long in_b = 0;
  long in_both = 0;
  for (long x = std::min(ax0, bx0); x < std::max(ax1, bx1); ++x) {
    for (long y = std::min(ay0, by0); y < std::max(ay1, by1); ++y) {
      const bool ia = x >= ax0 && x < ax1 && y >= ay0 && y < ay1;
      const bool ib = x >= bx0 && x < bx1 && y >= by0 && y < by1;
      in_a += ia;
      in_b += ib;
      in_both += ia && ib;
    }
  }
  const long uni = in_a + in_b - in_both;
  return uni == 0 ? 0.0 : static_cast<double>(in_both) / static_cast<double>(uni);
}

// Random box on the quarter-pixel lattice, sized to keep the oracle cheap.
inline Box random_lattice_box(RandomStream & rng)
{
  auto lattice = [&rng](double lo, double hi) {
    return std::floor(rng.next_in(lo, hi) * 4.0) / 4.0;
  };
  const double w = std::max(0.25, lattice(0.25, 30.0));
  const double h = std::max(0.25, lattice(0.25, 30.0));
  return Box{lattice(0.0, 40.0), lattice(0.0, 40.0), w, h};
}

inline Mask random_mask(RandomStream & rng, int width, int height, double density = 0.4)
{
  Mask mask = Mask::zeros(width, height);
  for (auto & bit : mask.bits) {
    bit = rng.next_unit() < density ? 1 : 0;
  }
  return mask;
}

// Randomized oracle-backed cascade run: annotations, noise, corruption and
// cascade settings all drawn from one stream.
struct CascadeScenario
{
  SequenceAnnotation seq;
  SemanticQuery query;
  OracleNoise noise;
  CascadeConfig cfg;
  ErrorInjection color_inj;
  ErrorInjection gender_inj;
};

inline CascadeScenario random_cascade_scenario(RandomStream & rng)
{
  const auto & tax = AttributeTaxonomy::get();
  const int n_frames = 5 + static_cast<int>(rng.next_below(8));
  const int n_persons = 1 + static_cast<int>(rng.next_below(5));

  std::vector<PersonAnnotation> roster;
  for (int p = 0; p < n_persons; ++p) {
    std::map<std::string, std::string> attrs;
    const auto & classes = tax.height_classes();
    attrs["height"] =
      rng.next_unit() < 0.2 ? "unknown" : classes[rng.next_below(classes.size())].label;
    attrs["torso_color"] = tax.color_labels()[rng.next_below(tax.color_labels().size())];
    attrs["torso_second_color"] = tax.color_labels()[rng.next_below(tax.color_labels().size())];
    attrs["torso_type"] = tax.torso_types()[rng.next_below(tax.torso_types().size())];
    attrs["gender"] = tax.genders()[rng.next_below(tax.genders().size())];
    roster.push_back(person_at("p" + std::to_string(p), Box{0, 0, 10, 10}, attrs));
  }

  std::vector<std::vector<PersonAnnotation>> frames(n_frames);
  for (int f = 0; f < n_frames; ++f) {
    for (int p = 0; p < n_persons; ++p) {
      if (f > 0 && rng.next_unit() > 0.8) {
        continue;
      }
      PersonAnnotation person = roster[p];
      const double w = rng.next_in(20.0, 70.0);
      const double h = rng.next_in(60.0, 160.0);
      const Box box{rng.next_in(0.0, 640.0 - w), rng.next_in(0.0, 480.0 - h), w, h};
      person.markers = markers_for_box(box);
      frames[f].push_back(std::move(person));
    }
  }

  CascadeScenario sc;
  sc.seq = simple_sequence(std::move(frames), "p0");
  sc.query = query_from_target(sc.seq);
  sc.noise.seed = rng.next_u64();
  sc.noise.jitter_px = rng.next_in(0.0, 3.0);
  sc.noise.drop_prob = rng.next_in(0.0, 0.3);
  sc.noise.merge_overlapping = rng.next_unit() < 0.5;
  sc.cfg.skip_frames = static_cast<int>(rng.next_below(3));
  sc.cfg.height_margin_cm = rng.next_unit() < 0.5 ? 0.0 : 5.0;
  sc.color_inj = {rng.next_in(0.0, 0.3), rng.next_u64()};
  sc.gender_inj = {rng.next_in(0.0, 0.3), rng.next_u64()};
  return sc;
}

}  // namespace sbpr::test

#endif  // SBPR_TESTS_SUPPORT_HPP_
