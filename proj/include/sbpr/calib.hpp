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

#ifndef SBPR_CALIB_HPP_
#define SBPR_CALIB_HPP_

#include <Eigen/Dense>

#include "sbpr/model.hpp"

namespace sbpr
{

// Classic eleven-parameter camera model with one radial distortion
// coefficient. World units are centimeters, the ground plane is Zw = 0,
// sensor units are millimeters, image units are pixels.
struct TsaiCamera
{
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  // world -> camera
  Eigen::Vector3d translation_cm = Eigen::Vector3d::Zero();
  double focal_mm = 1.0;
  double kappa1_per_mm2 = 0.0;
  double cx_px = 0.0;
  double cy_px = 0.0;
  double sx = 1.0;
  double dx_mm = 0.01;
  double dy_mm = 0.01;
  int image_width = 0;
  int image_height = 0;
};

// Rejects non-orthonormal rotations (tolerance 1e-9 on R^T R = I and on
// det(R) = +1) and non-positive focal/pixel/scale parameters.
void validate_camera(const TsaiCamera & cam);

struct WorldRay
{
  Eigen::Vector3d origin_cm = Eigen::Vector3d::Zero();
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();  // unit length
};

struct HeightEstimate
{
  double height_cm = 0.0;
  // Closest-approach distance between the head ray and the vertical line
  // through the back-projected feet point. Zero for exact geometry.
  double residual_cm = 0.0;
};

// World point (cm) to pixel. Applies the rigid transform, perspective
// division onto the sensor, inversion of the radial distortion by fixed-point
// iteration (start at the undistorted coordinates, stop when successive
// iterates differ by less than 1e-12 mm, at most 50 rounds), then the pixel
// mapping u = sx*Xd/dx + Cx, v = Yd/dy + Cy.
Point2 project(const TsaiCamera & cam, const Eigen::Vector3d & world_cm);

// Pixel to world ray: undistorts directly (the forward distortion map needs
// no iteration in this direction), lifts to a camera-frame direction and
// rotates it into world coordinates. origin is the camera center.
WorldRay back_project_ray(const TsaiCamera & cam, const Point2 & pixel);

// Intersection of the back-projected ray with the horizontal plane
// Zw = plane_z_cm. The intersection must lie in front of the camera.
Eigen::Vector3d back_project_to_plane(const TsaiCamera & cam, const Point2 & pixel, double plane_z_cm);

// Feet pixel -> ground point F; the returned height is the Z of the point on
// the vertical line through F closest to the head ray. Negative heights are
// returned as-is; they indicate broken geometry upstream.
HeightEstimate estimate_height(const TsaiCamera & cam, const Point2 & head_px, const Point2 & feet_px);

// True when lo - margin <= height <= hi + margin for the class range;
// the "unknown" class matches every height.
bool height_class_match(double height_cm, const std::string & class_label, double margin_cm = 0.0);

}  // namespace sbpr

#endif  // SBPR_CALIB_HPP_
