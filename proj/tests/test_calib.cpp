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

#include <cmath>

#include "sbpr/calib.hpp"
#include "sbpr/error.hpp"
#include "sbpr/rng.hpp"
#include "support.hpp"

using namespace sbpr;

namespace
{

double point_to_ray_distance(const Eigen::Vector3d & p, const WorldRay & ray)
{
  const Eigen::Vector3d d = p - ray.origin_cm;
  return (d - d.dot(ray.direction) * ray.direction).norm();
}

}  // namespace

TEST_CASE("project: optical axis lands on the image center")
{
  const TsaiCamera cam = test::axis_camera();
  const Point2 px = project(cam, Eigen::Vector3d(0.0, 0.0, 0.0));
  CHECK(px.x == doctest::Approx(cam.cx_px).epsilon(1e-12));
  CHECK(px.y == doctest::Approx(cam.cy_px).epsilon(1e-12));
}

TEST_CASE("project: hand-evaluated frontal case")
{
  // f = 10 mm, z = 500 cm, x = 5 cm: the sensor offset is
  // f * (x / z) = 10 mm * 0.01 = 0.1 mm, i.e. 0.1 / 0.01 = 10 pixels.
  const TsaiCamera cam = test::axis_camera(500.0, 10.0);
  const Point2 px = project(cam, Eigen::Vector3d(5.0, 0.0, 0.0));
  CHECK(px.x == doctest::Approx(cam.cx_px + 10.0).epsilon(1e-12));
  CHECK(px.y == doctest::Approx(cam.cy_px).epsilon(1e-12));
}

TEST_CASE("project rejects points behind the camera")
{
  const TsaiCamera cam = test::axis_camera(500.0);
  CHECK_THROWS_AS(project(cam, Eigen::Vector3d(0.0, 0.0, -600.0)), Error);
}

TEST_CASE("back_project_ray basics")
{
  SUBCASE("principal ray")
  {
    const TsaiCamera cam =
      test::look_at_camera({100.0, -200.0, 300.0}, {50.0, 400.0, 0.0}, 640, 480, 8.0);
    const WorldRay ray = back_project_ray(cam, Point2{cam.cx_px, cam.cy_px});
    const Eigen::Vector3d expected = cam.rotation.transpose() * Eigen::Vector3d(0.0, 0.0, 1.0);
    CHECK((ray.direction - expected).norm() < 1e-12);
  }
  SUBCASE("camera at the world origin")
  {
    TsaiCamera cam = test::axis_camera(0.0);
    cam.translation_cm.setZero();
    const WorldRay ray = back_project_ray(cam, Point2{400.0, 300.0});
    CHECK(ray.origin_cm.norm() == 0.0);
    CHECK(ray.direction.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("projected points lie on their back-projected ray")
  {
    RandomStream rng(11);
    for (int i = 0; i < 200; ++i) {
      const auto rc = test::random_camera(rng, true);
      const Eigen::Vector3d p(
        rc.look_at.x() + rng.next_in(-150.0, 150.0), rc.look_at.y() + rng.next_in(-150.0, 150.0),
        rng.next_in(0.0, 200.0));
      const Point2 px = project(rc.cam, p);
      const WorldRay ray = back_project_ray(rc.cam, px);
      CHECK(point_to_ray_distance(p, ray) < 1e-9);
    }
  }
}

TEST_CASE("back_project_to_plane")
{
  SUBCASE("recovers projected ground points")
  {
    RandomStream rng(12);
    for (int i = 0; i < 200; ++i) {
      const auto rc = test::random_camera(rng, true);
      const Eigen::Vector3d p(
        rc.look_at.x() + rng.next_in(-150.0, 150.0), rc.look_at.y() + rng.next_in(-150.0, 150.0),
        0.0);
      const Point2 px = project(rc.cam, p);
      const Eigen::Vector3d back = back_project_to_plane(rc.cam, px, 0.0);
      CHECK((back - p).norm() < 1e-6);
    }
  }
  SUBCASE("parallel ray has no intersection")
  {
    // Horizontal camera: the principal ray runs parallel to the ground.
    const TsaiCamera cam =
      test::look_at_camera({0.0, 0.0, 200.0}, {0.0, 500.0, 200.0}, 640, 480, 8.0);
    CHECK_THROWS_AS(back_project_to_plane(cam, Point2{cam.cx_px, cam.cy_px}, 0.0), Error);
  }
  SUBCASE("plane at camera height intersects above the ground")
  {
    const TsaiCamera cam =
      test::look_at_camera({0.0, -400.0, 300.0}, {0.0, 300.0, 0.0}, 640, 480, 8.0);
    // A pixel above the image center looks upward toward Z = 300 cm.
    const Eigen::Vector3d hit = back_project_to_plane(cam, Point2{cam.cx_px, 60.0}, 250.0);
    CHECK(hit.z() == doctest::Approx(250.0).epsilon(1e-9));
    CHECK(hit.y() > -400.0);
  }
}

TEST_CASE("estimate_height recovers synthetic persons")
{
  SUBCASE("exact geometry, no distortion")
  {
    const TsaiCamera cam =
      test::look_at_camera({0.0, -400.0, 300.0}, {0.0, 300.0, 0.0}, 640, 480, 8.0);
    const Eigen::Vector3d feet(50.0, 250.0, 0.0);
    const Eigen::Vector3d head(50.0, 250.0, 170.0);
    const HeightEstimate est = estimate_height(cam, project(cam, head), project(cam, feet));
    CHECK(est.height_cm == doctest::Approx(170.0).epsilon(1e-9));
    CHECK(std::abs(est.height_cm - 170.0) < 1e-6);
    CHECK(est.residual_cm < 1e-9);
  }
  SUBCASE("zero-extent person")
  {
    const TsaiCamera cam =
      test::look_at_camera({120.0, -400.0, 280.0}, {0.0, 300.0, 0.0}, 640, 480, 8.0);
    const Point2 px = project(cam, Eigen::Vector3d(40.0, 200.0, 0.0));
    const HeightEstimate est = estimate_height(cam, px, px);
    CHECK(std::abs(est.height_cm) < 1e-9);
  }
  SUBCASE("with radial distortion")
  {
    const TsaiCamera cam =
      test::look_at_camera({0.0, -400.0, 300.0}, {0.0, 300.0, 0.0}, 640, 480, 8.0, -1e-4);
    const Eigen::Vector3d feet(50.0, 250.0, 0.0);
    const Eigen::Vector3d head(50.0, 250.0, 170.0);
    const HeightEstimate est = estimate_height(cam, project(cam, head), project(cam, feet));
    CHECK(std::abs(est.height_cm - 170.0) < 1e-3);
  }
  SUBCASE("random cameras and segments")
  {
    RandomStream rng(13);
    for (int i = 0; i < 200; ++i) {
      const bool with_distortion = (i % 2) == 1;
      const auto rc = test::random_camera(rng, with_distortion);
      const double true_height = rng.next_in(130.0, 210.0);
      const Eigen::Vector3d feet(
        rc.look_at.x() + rng.next_in(-120.0, 120.0), rc.look_at.y() + rng.next_in(-120.0, 120.0),
        0.0);
      const Eigen::Vector3d head = feet + Eigen::Vector3d(0.0, 0.0, true_height);
      const HeightEstimate est =
        estimate_height(rc.cam, project(rc.cam, head), project(rc.cam, feet));
      CHECK(std::abs(est.height_cm - true_height) < (with_distortion ? 1e-3 : 1e-6));
      CHECK(est.residual_cm < 1e-9);
    }
  }
}

TEST_CASE("camera validation")
{
  TsaiCamera cam = test::axis_camera();
  CHECK_NOTHROW(validate_camera(cam));

  SUBCASE("rejects non-unit determinant")
  {
    cam.rotation(0, 0) = -1.0;  // reflection: orthonormal but det = -1
    CHECK_THROWS_AS(validate_camera(cam), Error);
  }
  SUBCASE("rejects non-orthonormal rows")
  {
    cam.rotation(0, 1) = 0.5;
    CHECK_THROWS_AS(validate_camera(cam), Error);
  }
  SUBCASE("rejects non-positive scale parameters")
  {
    cam.sx = 0.0;
    CHECK_THROWS_AS(validate_camera(cam), Error);
  }
}

TEST_CASE("height_class_match")
{
  CHECK(height_class_match(165.0, "short"));
  CHECK(height_class_match(165.0, "average"));  // overlapping ranges
  for (const auto & cls : AttributeTaxonomy::get().height_classes()) {
    CHECK_FALSE(height_class_match(120.0, cls.label));
  }
  CHECK(height_class_match(120.0, "unknown"));
  CHECK_THROWS_AS(height_class_match(170.0, "gigantic"), Error);

  SUBCASE("monotone in the margin")
  {
    RandomStream rng(17);
    for (int i = 0; i < 500; ++i) {
      const double h = rng.next_in(100.0, 240.0);
      const auto & classes = AttributeTaxonomy::get().height_classes();
      const auto & cls = classes[rng.next_below(classes.size())];
      const double m1 = rng.next_in(0.0, 20.0);
      const double m2 = m1 + rng.next_in(0.0, 20.0);
      if (height_class_match(h, cls.label, m1)) {
        CHECK(height_class_match(h, cls.label, m2));
      }
    }
  }
}

TEST_CASE("distortion inversion round trip across the image")
{
  // Strong distortion near the image corners still inverts cleanly.
  const TsaiCamera cam =
    test::look_at_camera({0.0, -400.0, 300.0}, {0.0, 300.0, 0.0}, 640, 480, 8.0, -2e-4);
  RandomStream rng(19);
  for (int i = 0; i < 300; ++i) {
    const Eigen::Vector3d p(rng.next_in(-250.0, 250.0), rng.next_in(0.0, 500.0), 0.0);
    const Point2 px = project(cam, p);
    CHECK((back_project_to_plane(cam, px, 0.0) - p).norm() < 1e-6);
  }
}
