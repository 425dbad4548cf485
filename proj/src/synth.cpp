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

#include "sbpr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sbpr/attr.hpp"
#include "sbpr/error.hpp"
#include "sbpr/patch.hpp"

namespace sbpr
{

void validate_scenario(const Scenario & scenario)
{
  validate_camera(scenario.camera);
  if (scenario.camera.image_width <= 0 || scenario.camera.image_height <= 0) {
    raise(ErrorCode::invalid, "scenario camera needs a positive image size");
  }
  if (scenario.frame_count <= 0) {
    raise(ErrorCode::invalid, "scenario frame_count must be positive");
  }
  if (
    std::find(kDifficultyLevels.begin(), kDifficultyLevels.end(), scenario.difficulty) ==
    kDifficultyLevels.end()) {
    raise(ErrorCode::invalid, "scenario difficulty not one of the four levels");
  }
  if (scenario.persons.empty()) {
    raise(ErrorCode::invalid, "scenario has no persons");
  }

  const auto & tax = AttributeTaxonomy::get();
  const auto & swatches = canonical_swatches();
  bool target_found = false;
  for (const auto & person : scenario.persons) {
    if (person.person_id.empty()) {
      raise(ErrorCode::invalid, "scenario person with empty id");
    }
    if (person.person_id == scenario.target_person_id) {
      target_found = true;
    }
    if (!(person.height_cm >= 130.0 && person.height_cm <= 210.0)) {
      raise(
        ErrorCode::invalid,
        "person \"" + person.person_id + "\" height outside 130..210 cm");
    }
    if (person.trajectory_cm.empty()) {
      raise(ErrorCode::invalid, "person \"" + person.person_id + "\" has an empty trajectory");
    }
    if (!(person.width_to_height_ratio > 0.0)) {
      raise(ErrorCode::invalid, "width_to_height_ratio must be positive");
    }
    if (!tax.is_torso_type(person.torso_type) || !tax.is_leg_type(person.leg_type) ||
        !tax.is_gender(person.gender) || !tax.is_color(person.torso_color1) ||
        !tax.is_color(person.torso_color2) || !tax.is_color(person.leg_color)) {
      raise(ErrorCode::taxonomy, "person \"" + person.person_id + "\" has a label outside the taxonomy");
    }
    if (swatches.find(person.torso_color1) == swatches.end()) {
      raise(
        ErrorCode::invalid,
        "person \"" + person.person_id + "\" torso_color1 must name a culture color");
    }
    if (swatches.find(person.leg_color) == swatches.end()) {
      raise(
        ErrorCode::invalid,
        "person \"" + person.person_id + "\" leg_color must name a culture color");
    }
  }
  if (!target_found) {
    raise(
      ErrorCode::invalid,
      "target_person_id \"" + scenario.target_person_id + "\" does not name a scenario person");
  }
}

std::string height_class_for(double height_cm)
{
  const auto & classes = AttributeTaxonomy::get().height_classes();
  std::string best = "unknown";
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto & cls : classes) {
    if (height_cm < cls.lo_cm || height_cm > cls.hi_cm) {
      continue;
    }
    const double dist = std::abs(height_cm - 0.5 * (cls.lo_cm + cls.hi_cm));
    if (dist < best_dist) {  // strict: ties keep the earlier (shorter) class
      best_dist = dist;
      best = cls.label;
    }
  }
  return best;
}

namespace
{

struct Billboard
{
  std::size_t person_index = 0;
  Box rect;           // real-valued, fully inside the frame
  double depth_cm = 0.0;  // camera-frame z of the feet point
};

// Paint color per billboard row, following the same floor arithmetic the
// patch extractor applies to a detection box, so an unoccluded person's
// torso band is pure torso color.
struct RowBands
{
  int torso_begin = 0;
  int torso_end = 0;
  int leg_end = 0;
};

RowBands row_bands(const ScenarioPerson & person, int y0, int rows)
{
  const Band torso = torso_band(person.torso_type);
  const Band leg = leg_band(person.leg_type);
  const Box as_box{0.0, static_cast<double>(y0), 1.0, static_cast<double>(rows)};
  const BandRows torso_rows = band_rows(as_box, torso);
  const BandRows leg_rows = band_rows(as_box, leg);
  RowBands bands;
  bands.torso_begin = torso_rows.begin;
  bands.torso_end = torso_rows.end;
  bands.leg_end = std::max(leg_rows.end, torso_rows.end);
  return bands;
}

}  // namespace

RenderedFrame render_frame(const Scenario & scenario, int frame_index)
{
  validate_scenario(scenario);
  if (frame_index < 0 || frame_index >= scenario.frame_count) {
    raise(ErrorCode::invalid, "frame index outside the scenario range");
  }

  const TsaiCamera & cam = scenario.camera;
  const int width = cam.image_width;
  const int height = cam.image_height;

  RenderedFrame out;
  out.image = Image::filled(width, height, scenario.background_rgb);

  std::vector<Billboard> billboards;
  for (std::size_t pi = 0; pi < scenario.persons.size(); ++pi) {
    const ScenarioPerson & person = scenario.persons[pi];
    const int rel = frame_index - person.start_frame;
    if (rel < 0 || rel >= static_cast<int>(person.trajectory_cm.size())) {
      continue;  // not present in this frame
    }
    const double xw = person.trajectory_cm[rel][0];
    const double yw = person.trajectory_cm[rel][1];
    const Eigen::Vector3d feet_w(xw, yw, 0.0);
    const Eigen::Vector3d head_w(xw, yw, person.height_cm);

    Point2 feet_px;
    Point2 head_px;
    try {
      feet_px = project(cam, feet_w);
      head_px = project(cam, head_w);
    } catch (const Error &) {
      continue;  // behind the camera
    }

    const double ph = feet_px.y - head_px.y;
    if (!(ph > 0.0)) {
      continue;
    }
    const double pw = person.width_to_height_ratio * ph;
    const double cx = 0.5 * (head_px.x + feet_px.x);
    const Box rect{cx - 0.5 * pw, head_px.y, pw, ph};
    if (rect.x < 0.0 || rect.y < 0.0 || rect.right() > width || rect.bottom() > height) {
      continue;  // only fully visible billboards are staged
    }

    Billboard bb;
    bb.person_index = pi;
    bb.rect = rect;
    bb.depth_cm = (cam.rotation * feet_w + cam.translation_cm).z();
    billboards.push_back(bb);
  }

  // Painter's algorithm: far billboards first, nearer ones overwrite.
  std::stable_sort(billboards.begin(), billboards.end(), [](const Billboard & a, const Billboard & b) {
    return a.depth_cm > b.depth_cm;
  });

  std::vector<int> owner(static_cast<std::size_t>(width) * height, -1);
  const auto & swatches = canonical_swatches();
  const Rgb skin = swatches.at("skin");

  for (const Billboard & bb : billboards) {
    const ScenarioPerson & person = scenario.persons[bb.person_index];
    const PixelRect cells = enclosing_pixels(bb.rect, width, height);
    const RowBands bands = row_bands(person, cells.y0, cells.y1 - cells.y0);
    const Rgb torso_rgb = swatches.at(person.torso_color1);
    const Rgb leg_rgb = swatches.at(person.leg_color);

    for (int y = cells.y0; y < cells.y1; ++y) {
      Rgb color = skin;
      if (y >= bands.torso_begin && y < bands.torso_end) {
        color = torso_rgb;
      } else if (y >= bands.torso_end && y < bands.leg_end) {
        color = leg_rgb;
      }
      for (int x = cells.x0; x < cells.x1; ++x) {
        out.image.set_pixel(x, y, color);
        owner[static_cast<std::size_t>(y) * width + x] = static_cast<int>(bb.person_index);
      }
    }
  }

  // Emit annotations in scenario order; detections only for visible persons.
  std::vector<const Billboard *> by_person(scenario.persons.size(), nullptr);
  for (const Billboard & bb : billboards) {
    by_person[bb.person_index] = &bb;
  }

  for (std::size_t pi = 0; pi < scenario.persons.size(); ++pi) {
    if (by_person[pi] == nullptr) {
      continue;
    }
    const ScenarioPerson & person = scenario.persons[pi];
    const Box rect = by_person[pi]->rect;
    const MarkerFractions & mf = scenario.marker_fractions;

    PersonAnnotation ann;
    ann.person_id = person.person_id;
    ann.markers.head = {rect.x + 0.5 * rect.w, rect.y};
    ann.markers.neck_left = {rect.x, rect.y + mf.neck * rect.h};
    ann.markers.neck_right = {rect.right(), rect.y + mf.neck * rect.h};
    ann.markers.shoulder_left = {rect.x, rect.y + mf.shoulder * rect.h};
    ann.markers.shoulder_right = {rect.right(), rect.y + mf.shoulder * rect.h};
    ann.markers.waist_left = {rect.x, rect.y + mf.waist * rect.h};
    ann.markers.waist_right = {rect.right(), rect.y + mf.waist * rect.h};
    ann.markers.foot_left = {rect.x, rect.bottom()};
    ann.markers.foot_right = {rect.right(), rect.bottom()};
    ann.attributes["height"] = height_class_for(person.height_cm);
    ann.attributes["torso_type"] = person.torso_type;
    ann.attributes["torso_color"] = person.torso_color1;
    ann.attributes["torso_second_color"] = person.torso_color2;
    ann.attributes["leg_type"] = person.leg_type;
    ann.attributes["leg_color"] = person.leg_color;
    ann.attributes["gender"] = person.gender;
    out.persons.push_back(std::move(ann));

    // Tight box and exact mask over the pixels this person still owns; owned
    // pixels can only lie inside the billboard cells.
    const PixelRect cells = enclosing_pixels(rect, width, height);
    int x0 = width;
    int y0 = height;
    int x1 = -1;
    int y1 = -1;
    Mask mask = Mask::zeros(width, height);
    std::size_t visible = 0;
    for (int y = cells.y0; y < cells.y1; ++y) {
      for (int x = cells.x0; x < cells.x1; ++x) {
        if (owner[static_cast<std::size_t>(y) * width + x] == static_cast<int>(pi)) {
          mask.set(x, y, true);
          ++visible;
          x0 = std::min(x0, x);
          y0 = std::min(y0, y);
          x1 = std::max(x1, x);
          y1 = std::max(y1, y);
        }
      }
    }
    if (visible == 0) {
      continue;  // fully occluded: annotated but undetectable
    }
    Detection det;
    det.box = Box{
      static_cast<double>(x0), static_cast<double>(y0), static_cast<double>(x1 - x0 + 1),
      static_cast<double>(y1 - y0 + 1)};
    det.mask = std::move(mask);
    det.source_person_id = person.person_id;
    det.score = 1.0;
    out.detections.push_back(std::move(det));
  }

  return out;
}

SequenceAnnotation assemble_annotation(
  const Scenario & scenario, const std::vector<std::vector<PersonAnnotation>> & frames)
{
  SequenceAnnotation seq;
  seq.sequence_id = scenario.sequence_id;
  seq.difficulty = scenario.difficulty;
  seq.frame_count = scenario.frame_count;
  seq.target_person_id = scenario.target_person_id;
  seq.image_width = scenario.camera.image_width;
  seq.image_height = scenario.camera.image_height;
  seq.frames = frames;
  validate_sequence(seq);
  return seq;
}

}  // namespace sbpr
