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

#include <algorithm>

#include "sbpr/error.hpp"
#include "sbpr/model.hpp"
#include "sbpr/rng.hpp"
#include "support.hpp"

using namespace sbpr;

TEST_CASE("taxonomy label sets")
{
  const auto & tax = AttributeTaxonomy::get();
  CHECK(tax.color_labels().size() == 13);
  CHECK(tax.color_labels().front() == "unknown");
  CHECK(tax.is_color("skin"));
  CHECK(tax.is_torso_type("indian kurta/dress"));
  CHECK(tax.is_leg_type("short shorts"));
  CHECK_FALSE(tax.is_gender("robot"));
  CHECK(tax.is_height_class("unknown"));
  CHECK_FALSE(tax.is_height_class("gigantic"));

  // Bounded classes in order, each range valid, adjacent overlaps exactly 10.
  const auto & classes = tax.height_classes();
  REQUIRE(classes.size() == 5);
  CHECK(classes[0].lo_cm == 130.0);
  CHECK(classes[0].hi_cm == 160.0);
  CHECK(classes[4].lo_cm == 180.0);
  CHECK(classes[4].hi_cm == 210.0);
  for (const auto & cls : classes) {
    CHECK(cls.lo_cm < cls.hi_cm);
  }
  for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
    CHECK(classes[i].hi_cm - classes[i + 1].lo_cm == 10.0);
  }
}

TEST_CASE("normalize_label folds case and the NA alias")
{
  CHECK(normalize_label("Short Sleeve") == "short sleeve");
  CHECK(normalize_label("NA") == "unknown");
  CHECK(normalize_label("na") == "unknown");
  CHECK(normalize_label("  Red ") == "red");
  CHECK(normalize_label("") == "unknown");
}

TEST_CASE("ground_truth_box from hand-worked markers")
{
  // head at (50,10); feet rows at 108/110; x extremes 40 and 62 over the
  // non-head markers.
  BodyMarkers m;
  m.head = {50, 10};
  m.neck_left = {45, 30};
  m.neck_right = {55, 30};
  m.shoulder_left = {40, 35};
  m.shoulder_right = {62, 35};
  m.waist_left = {44, 60};
  m.waist_right = {58, 60};
  m.foot_left = {46, 108};
  m.foot_right = {54, 110};

  const Box box = ground_truth_box(m);
  CHECK(box == Box{40, 10, 22, 100});
}

TEST_CASE("ground_truth_box: zero-width collapse is an error")
{
  BodyMarkers m = test::markers_for_box(Box{50, 10, 20, 100});
  for (Point2 * p : m.all()) {
    p->x = 50;
  }
  CHECK_THROWS_AS(ground_truth_box(m), Error);
  try {
    ground_truth_box(m);
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::degenerate_box);
  }
}

TEST_CASE("ground_truth_box matches a brute-force extreme scan")
{
  RandomStream rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Box frame{rng.next_in(0, 300), rng.next_in(0, 200), rng.next_in(10, 60),
                    rng.next_in(40, 150)};
    const BodyMarkers m = test::markers_for_box(frame);

    // independent scan over the marker list
    const auto points = m.all();
    double left = 1e18;
    double right = -1e18;
    for (std::size_t i = 1; i < points.size(); ++i) {
      left = std::min(left, points[i]->x);
      right = std::max(right, points[i]->x);
    }
    const double bottom = std::max(m.foot_left.y, m.foot_right.y);

    const Box got = ground_truth_box(m);
    CHECK(got.x == doctest::Approx(left).epsilon(1e-12));
    CHECK(got.right() == doctest::Approx(right).epsilon(1e-12));
    CHECK(got.y == m.head.y);
    CHECK(got.bottom() == doctest::Approx(bottom).epsilon(1e-12));
  }
}

TEST_CASE("ground_truth_box ignores the head x coordinate")
{
  BodyMarkers m = test::markers_for_box(Box{100, 50, 30, 120});
  const Box base = ground_truth_box(m);
  RandomStream rng(7);
  for (int i = 0; i < 50; ++i) {
    m.head.x = rng.next_in(0.0, 640.0);
    CHECK(ground_truth_box(m) == base);
  }
}

TEST_CASE("query_from_target picks up the five consumed attributes")
{
  const Box box{100, 50, 30, 120};
  PersonAnnotation target = test::person_at(
    "p1", box,
    {{"height", "average"},
     {"torso_type", "short sleeve"},
     {"torso_color", "yellow"},
     {"torso_second_color", "black"},
     {"gender", "male"},
     {"hair", "long"}});
  SequenceAnnotation seq = test::simple_sequence({{target}}, "p1");

  const SemanticQuery query = query_from_target(seq);
  CHECK(query.height_class == "average");
  CHECK(query.torso_type == "short sleeve");
  CHECK(query.torso_color1 == "yellow");
  CHECK(query.torso_color2 == "black");
  CHECK(query.gender == "male");
}

TEST_CASE("query_from_target maps absent annotations to unknown")
{
  PersonAnnotation target = test::person_at("p1", Box{100, 50, 30, 120}, {{"gender", "female"}});
  SequenceAnnotation seq = test::simple_sequence({{target}}, "p1");
  const SemanticQuery query = query_from_target(seq);
  CHECK(query.torso_color2 == "unknown");
  CHECK(query.height_class == "unknown");
  CHECK(query.torso_type == "unknown");
  CHECK(query.gender == "female");
}

TEST_CASE("query_from_target: all-unknown annotation yields the degenerate query")
{
  PersonAnnotation target = test::person_at("p1", Box{100, 50, 30, 120});
  SequenceAnnotation seq = test::simple_sequence({{target}}, "p1");
  CHECK(query_from_target(seq) == SemanticQuery{});
}

TEST_CASE("query_from_target without any target annotation fails")
{
  PersonAnnotation other = test::person_at("p2", Box{100, 50, 30, 120});
  SequenceAnnotation seq = test::simple_sequence({{other}}, "p1");
  CHECK_THROWS_AS(query_from_target(seq), Error);
}

TEST_CASE("validate_sequence rules")
{
  PersonAnnotation target = test::person_at("p1", Box{100, 50, 30, 120});

  SUBCASE("target may be absent from individual frames")
  {
    SequenceAnnotation seq = test::simple_sequence({{}, {target}}, "p1");
    CHECK_NOTHROW(validate_sequence(seq));
  }
  SUBCASE("difficulty is a closed set")
  {
    SequenceAnnotation seq = test::simple_sequence({{target}}, "p1");
    seq.difficulty = "impossible";
    CHECK_THROWS_AS(validate_sequence(seq), Error);
  }
  SUBCASE("markers must stay inside the frame")
  {
    PersonAnnotation bad = target;
    bad.markers.foot_right.y = 481.0;
    SequenceAnnotation seq = test::simple_sequence({{bad}}, "p1");
    CHECK_THROWS_AS(validate_sequence(seq), Error);
  }
  SUBCASE("head above the feet")
  {
    PersonAnnotation bad = target;
    bad.markers.head.y = 400.0;
    bad.markers.foot_left.y = 100.0;
    bad.markers.foot_right.y = 100.0;
    SequenceAnnotation seq = test::simple_sequence({{bad}}, "p1");
    CHECK_THROWS_AS(validate_sequence(seq), Error);
  }
  SUBCASE("taxonomy labels are enforced on consumed attributes")
  {
    PersonAnnotation bad = target;
    bad.attributes["gender"] = "robot";
    SequenceAnnotation seq = test::simple_sequence({{bad}}, "p1");
    try {
      validate_sequence(seq);
      CHECK(false);
    } catch (const Error & e) {
      CHECK(e.code() == ErrorCode::taxonomy);
      CHECK(std::string(e.what()).find("robot") != std::string::npos);
    }
  }
}
