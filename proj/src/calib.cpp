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

#include "sbpr/calib.hpp"

#include <cmath>
#include <string>

#include "sbpr/error.hpp"

namespace sbpr
{

namespace
{

constexpr double kDistortionTolMm = 1e-12;
constexpr int kDistortionMaxIter = 50;
constexpr double kParallelTol = 1e-12;

}  // namespace

void validate_camera(const TsaiCamera & cam)
{
  const Eigen::Matrix3d gram = cam.rotation.transpose() * cam.rotation;
  const double ortho_err = (gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (ortho_err > 1e-9) {
    raise(
      ErrorCode::invalid,
      "rotation is not orthonormal (max |R^T R - I| = " + std::to_string(ortho_err) + ")");
  }
  const double det = cam.rotation.determinant();
  if (std::abs(det - 1.0) > 1e-9) {
    raise(ErrorCode::invalid, "rotation determinant is not +1 (det = " + std::to_string(det) + ")");
  }
  if (!(cam.focal_mm > 0.0)) {
    raise(ErrorCode::invalid, "focal_mm must be positive");
  }
  if (!(cam.dx_mm > 0.0) || !(cam.dy_mm > 0.0)) {
    raise(ErrorCode::invalid, "pixel_size_mm entries must be positive");
  }
  if (!(cam.sx > 0.0)) {
    raise(ErrorCode::invalid, "sx must be positive");
  }
}

Point2 project(const TsaiCamera & cam, const Eigen::Vector3d & world_cm)
{
  const Eigen::Vector3d p = cam.rotation * world_cm + cam.translation_cm;
  if (!(p.z() > 0.0)) {
    raise(
      ErrorCode::geometry,
      "point behind camera (camera-frame z = " + std::to_string(p.z()) + " cm)");
  }

  const double xu = cam.focal_mm * p.x() / p.z();
  const double yu = cam.focal_mm * p.y() / p.z();

  // Invert Xu = Xd * (1 + kappa1 * r^2), r^2 = Xd^2 + Yd^2.
  double xd = xu;
  double yd = yu;
  bool converged = false;
  double r2 = xd * xd + yd * yd;
  for (int i = 0; i < kDistortionMaxIter; ++i) {
    r2 = xd * xd + yd * yd;
    const double denom = 1.0 + cam.kappa1_per_mm2 * r2;
    if (!(std::abs(denom) > 1e-12) || !std::isfinite(denom)) {
      break;
    }
    const double nx = xu / denom;
    const double ny = yu / denom;
    const bool done = std::abs(nx - xd) < kDistortionTolMm && std::abs(ny - yd) < kDistortionTolMm;
    xd = nx;
    yd = ny;
    if (done) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    raise(
      ErrorCode::numeric, "radial distortion inversion did not converge (kappa1 = " +
                            std::to_string(cam.kappa1_per_mm2) +
                            " /mm^2, r^2 = " + std::to_string(r2) + " mm^2)");
  }

  return Point2{cam.sx * xd / cam.dx_mm + cam.cx_px, yd / cam.dy_mm + cam.cy_px};
}

WorldRay back_project_ray(const TsaiCamera & cam, const Point2 & pixel)
{
  if (!std::isfinite(pixel.x) || !std::isfinite(pixel.y)) {
    raise(ErrorCode::invalid, "pixel coordinates are not finite");
  }
  const double xd = (pixel.x - cam.cx_px) * cam.dx_mm / cam.sx;
  const double yd = (pixel.y - cam.cy_px) * cam.dy_mm;
  const double r2 = xd * xd + yd * yd;
  const double xu = xd * (1.0 + cam.kappa1_per_mm2 * r2);
  const double yu = yd * (1.0 + cam.kappa1_per_mm2 * r2);

  const Eigen::Vector3d dir_cam(xu / cam.focal_mm, yu / cam.focal_mm, 1.0);
  WorldRay ray;
  ray.origin_cm = -(cam.rotation.transpose() * cam.translation_cm);
  ray.direction = (cam.rotation.transpose() * dir_cam).normalized();
  return ray;
}

Eigen::Vector3d back_project_to_plane(const TsaiCamera & cam, const Point2 & pixel, double plane_z_cm)
{
  const WorldRay ray = back_project_ray(cam, pixel);
  if (std::abs(ray.direction.z()) <= kParallelTol) {
    raise(
      ErrorCode::geometry,
      "ray is parallel to the plane Zw = " + std::to_string(plane_z_cm) + " cm");
  }
  const double t = (plane_z_cm - ray.origin_cm.z()) / ray.direction.z();
  if (!(t > 0.0)) {
    raise(
      ErrorCode::geometry,
      "plane intersection behind camera (parameter t = " + std::to_string(t) + ")");
  }
  return ray.origin_cm + t * ray.direction;
}

HeightEstimate estimate_height(const TsaiCamera & cam, const Point2 & head_px, const Point2 & feet_px)
{
  const Eigen::Vector3d feet = back_project_to_plane(cam, feet_px, 0.0);
  const WorldRay head = back_project_ray(cam, head_px);

  // Closest points between the head ray O + lambda*d and the vertical line
  // F + h*ez. With unit d the system reduces to a 2x2 solve with
  // denominator 1 - dz^2.
  const Eigen::Vector3d vertical(0.0, 0.0, 1.0);
  const double dz = head.direction.dot(vertical);
  const double denom = 1.0 - dz * dz;
  if (denom < kParallelTol) {
    raise(ErrorCode::geometry, "head ray is (near-)parallel to the vertical through the feet");
  }

  const Eigen::Vector3d w0 = head.origin_cm - feet;
  const double d_dot_w0 = head.direction.dot(w0);
  const double e_dot_w0 = w0.z();

  const double lambda = (dz * e_dot_w0 - d_dot_w0) / denom;
  const double h = (e_dot_w0 - dz * d_dot_w0) / denom;

  const Eigen::Vector3d on_ray = head.origin_cm + lambda * head.direction;
  const Eigen::Vector3d on_vertical = feet + h * vertical;

  HeightEstimate estimate;
  estimate.height_cm = h;
  estimate.residual_cm = (on_ray - on_vertical).norm();
  return estimate;
}

bool height_class_match(double height_cm, const std::string & class_label, double margin_cm)
{
  if (class_label == "unknown") {
    return true;
  }
  const HeightClass * cls = AttributeTaxonomy::get().find_height_class(class_label);
  if (cls == nullptr) {
    raise(ErrorCode::taxonomy, "height class not in taxonomy: \"" + class_label + "\"");
  }
  return cls->lo_cm - margin_cm <= height_cm && height_cm <= cls->hi_cm + margin_cm;
}

}  // namespace sbpr
