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

#ifndef SBPR_MODEL_HPP_
#define SBPR_MODEL_HPP_

#include <array>
#include <map>
#include <string>
#include <vector>

namespace sbpr
{

struct Point2
{
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2 &) const = default;
};

// Axis-aligned half-open rectangle [x, x+w) x [y, y+h) in real-valued pixel
// coordinates. Origin is the top-left image corner, y grows downward.
struct Box
{
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  bool operator==(const Box &) const = default;
};

struct HeightClass
{
  std::string label;
  double lo_cm = 0.0;
  double hi_cm = 0.0;
};

// The closed attribute label sets. Labels are stored lower-case; "na" is an
// accepted alias for "unknown" everywhere labels are read.
class AttributeTaxonomy
{
public:
  static const AttributeTaxonomy & get();

  const std::vector<std::string> & color_labels() const { return colors_; }
  const std::vector<std::string> & torso_types() const { return torso_types_; }
  const std::vector<std::string> & leg_types() const { return leg_types_; }
  const std::vector<std::string> & genders() const { return genders_; }
  // Bounded classes only; "unknown" is additionally a valid height label.
  const std::vector<HeightClass> & height_classes() const { return height_classes_; }

  bool is_color(const std::string & label) const;
  bool is_torso_type(const std::string & label) const;
  bool is_leg_type(const std::string & label) const;
  bool is_gender(const std::string & label) const;
  bool is_height_class(const std::string & label) const;

  // Null for "unknown" or labels outside the set.
  const HeightClass * find_height_class(const std::string & label) const;

private:
  AttributeTaxonomy();

  std::vector<std::string> colors_;
  std::vector<std::string> torso_types_;
  std::vector<std::string> leg_types_;
  std::vector<std::string> genders_;
  std::vector<HeightClass> height_classes_;
};

// Lower-cases, trims, and maps the "na" alias to "unknown".
std::string normalize_label(const std::string & label);

struct SemanticQuery
{
  std::string height_class = "unknown";
  std::string torso_type = "unknown";
  std::string torso_color1 = "unknown";
  std::string torso_color2 = "unknown";
  std::string gender = "unknown";
  bool operator==(const SemanticQuery &) const = default;
};

// Throws ErrorCode::taxonomy naming the offending label.
void validate_query(const SemanticQuery & query);

inline constexpr std::array<const char *, 9> kMarkerNames = {
  "head",          "neck_left",  "neck_right", "shoulder_left", "shoulder_right",
  "waist_left",    "waist_right", "foot_left", "foot_right"};

struct BodyMarkers
{
  Point2 head;
  Point2 neck_left;
  Point2 neck_right;
  Point2 shoulder_left;
  Point2 shoulder_right;
  Point2 waist_left;
  Point2 waist_right;
  Point2 foot_left;
  Point2 foot_right;

  // Order matches kMarkerNames.
  std::array<const Point2 *, 9> all() const;
  std::array<Point2 *, 9> all();
  bool operator==(const BodyMarkers &) const = default;
};

struct PersonAnnotation
{
  std::string person_id;
  BodyMarkers markers;
  // Attribute name -> label. Unrecognized names are preserved untouched.
  std::map<std::string, std::string> attributes;
  bool operator==(const PersonAnnotation &) const = default;
};

struct SequenceAnnotation
{
  std::string sequence_id;
  std::string difficulty;  // very easy | easy | medium | hard
  int frame_count = 0;
  std::string target_person_id;
  int image_width = 0;
  int image_height = 0;
  std::vector<std::vector<PersonAnnotation>> frames;

  const PersonAnnotation * find_person(int frame, const std::string & person_id) const;
  bool operator==(const SequenceAnnotation &) const = default;
};

inline constexpr std::array<const char *, 4> kDifficultyLevels = {
  "very easy", "easy", "medium", "hard"};

// Tight box from the nine body markers: top edge at the head, bottom edge at
// the lower foot, horizontal extent over the eight non-head markers.
// Throws ErrorCode::degenerate_box when the extent collapses.
Box ground_truth_box(const BodyMarkers & markers);

void validate_markers(const BodyMarkers & markers, double frame_w, double frame_h);
void validate_sequence(const SequenceAnnotation & seq);

// Builds the search query from the target person's annotated attributes;
// attributes missing from the annotation become "unknown".
SemanticQuery query_from_target(const SequenceAnnotation & seq);

}  // namespace sbpr

#endif  // SBPR_MODEL_HPP_
