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

#ifndef SBPR_SYNTH_HPP_
#define SBPR_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sbpr/calib.hpp"
#include "sbpr/detect.hpp"
#include "sbpr/image.hpp"
#include "sbpr/model.hpp"

namespace sbpr
{

struct MarkerFractions
{
  double neck = 0.10;
  double shoulder = 0.18;
  double waist = 0.50;
};

struct ScenarioPerson
{
  std::string person_id;
  double height_cm = 170.0;
  int start_frame = 0;
  // Ground position (Xw, Yw) in cm for frames start_frame .. start_frame+n-1.
  std::vector<std::array<double, 2>> trajectory_cm;
  std::string torso_type = "unknown";
  std::string torso_color1 = "unknown";
  std::string torso_color2 = "unknown";
  std::string leg_type = "unknown";
  std::string leg_color = "unknown";
  std::string gender = "unknown";
  double width_to_height_ratio = 0.3;
};

struct Scenario
{
  std::string sequence_id = "synthetic";
  std::string difficulty = "easy";
  TsaiCamera camera;
  std::vector<ScenarioPerson> persons;
  std::string target_person_id;
  int frame_count = 0;
  Rgb background_rgb{0, 0, 0};
  MarkerFractions marker_fractions;
  std::uint64_t seed = 0;
};

void validate_scenario(const Scenario & scenario);

struct RenderedFrame
{
  Image image;
  // One detection per person with visible pixels; exact masks and tight
  // boxes, identity attached.
  std::vector<Detection> detections;
  // One annotation per person present in the frame (fully occluded included).
  std::vector<PersonAnnotation> persons;
};

// Persons are vertical billboards on the ground plane: the segment from
// (X, Y, 0) to (X, Y, height) is projected and drawn as an image-space
// rectangle whose width is ratio * projected height, painted in horizontal
// bands (skin above the torso band, torso color over the torso band, leg
// color below it down to the leg band's end). Nearer billboards overwrite
// farther ones. Persons behind the camera or with the billboard not fully
// inside the frame are omitted from that frame.
RenderedFrame render_frame(const Scenario & scenario, int frame_index);

// Derives the annotated height class from a metric height: the class whose
// range center is nearest (ties toward the shorter class).
std::string height_class_for(double height_cm);

// Assembles the per-frame annotations into a sequence document skeleton.
SequenceAnnotation assemble_annotation(
  const Scenario & scenario, const std::vector<std::vector<PersonAnnotation>> & frames);

}  // namespace sbpr

#endif  // SBPR_SYNTH_HPP_
