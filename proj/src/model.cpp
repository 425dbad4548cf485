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

#include "sbpr/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "sbpr/error.hpp"

namespace sbpr
{

namespace
{

bool contains(const std::vector<std::string> & labels, const std::string & label)
{
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

}  // namespace

AttributeTaxonomy::AttributeTaxonomy()
{
  colors_ = {"unknown", "black", "blue",   "brown", "green", "grey",  "orange",
             "pink",    "purple", "red",   "white", "yellow", "skin"};
  torso_types_ = {"unknown", "long sleeve", "short sleeve", "no sleeve", "indian kurta/dress"};
  leg_types_ = {"unknown",     "long pants",   "dress",
                "skirt",       "long shorts",  "short shorts",
                "indian kurta/dress"};
  genders_ = {"unknown", "male", "female"};
  height_classes_ = {
    {"very short", 130.0, 160.0},
    {"short", 150.0, 170.0},
    {"average", 160.0, 180.0},
    {"tall", 170.0, 190.0},
    {"very tall", 180.0, 210.0},
  };
}

const AttributeTaxonomy & AttributeTaxonomy::get()
{
  static const AttributeTaxonomy taxonomy;
  return taxonomy;
}

bool AttributeTaxonomy::is_color(const std::string & label) const
{
  return contains(colors_, label);
}

bool AttributeTaxonomy::is_torso_type(const std::string & label) const
{
  return contains(torso_types_, label);
}

bool AttributeTaxonomy::is_leg_type(const std::string & label) const
{
  return contains(leg_types_, label);
}

bool AttributeTaxonomy::is_gender(const std::string & label) const
{
  return contains(genders_, label);
}

bool AttributeTaxonomy::is_height_class(const std::string & label) const
{
  return label == "unknown" || find_height_class(label) != nullptr;
}

const HeightClass * AttributeTaxonomy::find_height_class(const std::string & label) const
{
  for (const auto & cls : height_classes_) {
    if (cls.label == label) {
      return &cls;
    }
  }
  return nullptr;
}

std::string normalize_label(const std::string & label)
{
  std::size_t begin = label.find_first_not_of(" \t");
  std::size_t end = label.find_last_not_of(" \t");
  std::string out;
  if (begin != std::string::npos) {
    out = label.substr(begin, end - begin + 1);
  }
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (out.empty() || out == "na") {
    return "unknown";
  }
  return out;
}

void validate_query(const SemanticQuery & query)
{
  const auto & tax = AttributeTaxonomy::get();
  if (!tax.is_height_class(query.height_class)) {
    raise(ErrorCode::taxonomy, "query height_class not in taxonomy: \"" + query.height_class + "\"");
  }
  if (!tax.is_torso_type(query.torso_type)) {
    raise(ErrorCode::taxonomy, "query torso_type not in taxonomy: \"" + query.torso_type + "\"");
  }
  if (!tax.is_color(query.torso_color1)) {
    raise(ErrorCode::taxonomy, "query torso_color1 not in taxonomy: \"" + query.torso_color1 + "\"");
  }
  if (!tax.is_color(query.torso_color2)) {
    raise(ErrorCode::taxonomy, "query torso_color2 not in taxonomy: \"" + query.torso_color2 + "\"");
  }
  if (!tax.is_gender(query.gender)) {
    raise(ErrorCode::taxonomy, "query gender not in taxonomy: \"" + query.gender + "\"");
  }
}

std::array<const Point2 *, 9> BodyMarkers::all() const
{
  return {&head,       &neck_left,  &neck_right, &shoulder_left, &shoulder_right,
          &waist_left, &waist_right, &foot_left, &foot_right};
}

std::array<Point2 *, 9> BodyMarkers::all()
{
  return {&head,       &neck_left,  &neck_right, &shoulder_left, &shoulder_right,
          &waist_left, &waist_right, &foot_left, &foot_right};
}

const PersonAnnotation * SequenceAnnotation::find_person(
  int frame, const std::string & person_id) const
{
  if (frame < 0 || frame >= static_cast<int>(frames.size())) {
    return nullptr;
  }
  for (const auto & person : frames[frame]) {
    if (person.person_id == person_id) {
      return &person;
    }
  }
  return nullptr;
}

Box ground_truth_box(const BodyMarkers & markers)
{
  const double top = markers.head.y;
  const double bottom = std::max(markers.foot_left.y, markers.foot_right.y);

  const auto points = markers.all();
  double left = points[1]->x;
  double right = points[1]->x;
  std::string left_name = kMarkerNames[1];
  std::string right_name = kMarkerNames[1];
  for (std::size_t i = 1; i < points.size(); ++i) {  // skip head
    if (points[i]->x < left) {
      left = points[i]->x;
      left_name = kMarkerNames[i];
    }
    if (points[i]->x > right) {
      right = points[i]->x;
      right_name = kMarkerNames[i];
    }
  }

  if (!(right > left)) {
    raise(
      ErrorCode::degenerate_box,
      "ground-truth box has zero width: markers " + left_name + " and " + right_name +
        " both at x=" + std::to_string(left));
  }
  if (!(bottom > top)) {
    raise(
      ErrorCode::degenerate_box,
      "ground-truth box has zero height: head and lower foot both at y=" + std::to_string(top));
  }
  return Box{left, top, right - left, bottom - top};
}

void validate_markers(const BodyMarkers & markers, double frame_w, double frame_h)
{
  const auto points = markers.all();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2 & p = *points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      raise(ErrorCode::invalid, std::string("marker ") + kMarkerNames[i] + " is not finite");
    }
    if (p.x < 0.0 || p.x > frame_w || p.y < 0.0 || p.y > frame_h) {
      raise(
        ErrorCode::invalid, std::string("marker ") + kMarkerNames[i] + " outside frame bounds: (" +
                              std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    }
  }
  if (markers.head.y > std::min(markers.foot_left.y, markers.foot_right.y)) {
    raise(ErrorCode::invalid, "marker head lies below a foot marker");
  }
}

namespace
{

void validate_person_attributes(const PersonAnnotation & person)
{
  const auto & tax = AttributeTaxonomy::get();
  struct Check
  {
    const char * name;
    bool (AttributeTaxonomy::*fn)(const std::string &) const;
  };
  static constexpr Check checks[] = {
    {"height", &AttributeTaxonomy::is_height_class},
    {"torso_type", &AttributeTaxonomy::is_torso_type},
    {"torso_color", &AttributeTaxonomy::is_color},
    {"torso_second_color", &AttributeTaxonomy::is_color},
    {"gender", &AttributeTaxonomy::is_gender},
    {"leg_type", &AttributeTaxonomy::is_leg_type},
    {"leg_color", &AttributeTaxonomy::is_color},
  };
  for (const auto & check : checks) {
    auto it = person.attributes.find(check.name);
    if (it == person.attributes.end()) {
      continue;
    }
    if (!(tax.*check.fn)(it->second)) {
      raise(
        ErrorCode::taxonomy, "person \"" + person.person_id + "\" attribute " + check.name +
                               " has label outside taxonomy: \"" + it->second + "\"");
    }
  }
}

}  // namespace

void validate_sequence(const SequenceAnnotation & seq)
{
  if (seq.sequence_id.empty()) {
    raise(ErrorCode::invalid, "sequence_id is empty");
  }
  if (
    std::find(kDifficultyLevels.begin(), kDifficultyLevels.end(), seq.difficulty) ==
    kDifficultyLevels.end()) {
    raise(ErrorCode::invalid, "difficulty not one of the four levels: \"" + seq.difficulty + "\"");
  }
  if (seq.frame_count <= 0) {
    raise(ErrorCode::invalid, "frame_count must be positive");
  }
  if (static_cast<int>(seq.frames.size()) != seq.frame_count) {
    raise(ErrorCode::invalid, "frames list length does not match frame_count");
  }
  if (seq.image_width <= 0 || seq.image_height <= 0) {
    raise(ErrorCode::invalid, "image_size must be positive");
  }
  if (seq.target_person_id.empty()) {
    raise(ErrorCode::invalid, "target_person_id is empty");
  }

  bool target_seen = false;
  for (int f = 0; f < seq.frame_count; ++f) {
    for (const auto & person : seq.frames[f]) {
      if (person.person_id.empty()) {
        raise(ErrorCode::invalid, "frame " + std::to_string(f) + " has a person with empty id");
      }
      validate_markers(person.markers, seq.image_width, seq.image_height);
      validate_person_attributes(person);
      if (person.person_id == seq.target_person_id) {
        target_seen = true;
      }
    }
  }
  if (!target_seen) {
    raise(
      ErrorCode::invalid,
      "target person \"" + seq.target_person_id + "\" is not annotated in any frame");
  }
}

SemanticQuery query_from_target(const SequenceAnnotation & seq)
{
  const PersonAnnotation * target = nullptr;
  for (int f = 0; f < static_cast<int>(seq.frames.size()) && target == nullptr; ++f) {
    target = seq.find_person(f, seq.target_person_id);
  }
  if (target == nullptr) {
    raise(
      ErrorCode::invalid,
      "target person \"" + seq.target_person_id + "\" is not annotated in any frame");
  }

  auto attr_or_unknown = [&](const char * name) {
    auto it = target->attributes.find(name);
    return it == target->attributes.end() ? std::string("unknown") : it->second;
  };

  SemanticQuery query;
  query.height_class = attr_or_unknown("height");
  query.torso_type = attr_or_unknown("torso_type");
  query.torso_color1 = attr_or_unknown("torso_color");
  query.torso_color2 = attr_or_unknown("torso_second_color");
  query.gender = attr_or_unknown("gender");
  validate_query(query);
  return query;
}

}  // namespace sbpr
