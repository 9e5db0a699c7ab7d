/*
 * Copyright 2026 The Rigalign Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rigalign/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace rigalign {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}  // namespace

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

double wrap_pi(double angle) {
  double a = wrap_two_pi(angle);
  if (a > M_PI) a -= kTwoPi;
  return a;
}

RigidTransform::RigidTransform()
    : rotation_(Eigen::Quaterniond::Identity()),
      translation_(Eigen::Vector3d::Zero()) {}

RigidTransform::RigidTransform(const Eigen::Quaterniond& rotation,
                               const Eigen::Vector3d& translation,
                               std::string source_frame,
                               std::string target_frame)
    : rotation_(rotation),
      translation_(translation),
      source_frame_(std::move(source_frame)),
      target_frame_(std::move(target_frame)) {
  const double norm = rotation_.norm();
  if (norm < 1e-12) {
    throw Error("RigidTransform: quaternion norm is zero");
  }
  rotation_.coeffs() /= norm;
}

RigidTransform RigidTransform::identity(const std::string& frame) {
  return RigidTransform(Eigen::Quaterniond::Identity(),
                        Eigen::Vector3d::Zero(), frame, frame);
}

Eigen::Matrix4d RigidTransform::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_.toRotationMatrix();
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

double RigidTransform::rotation_angle() const {
  return Eigen::AngleAxisd(rotation_).angle();
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  if (b.target_frame() != a.source_frame()) {
    throw FrameMismatchError(a.source_frame(), b.target_frame());
  }
  return RigidTransform(a.rotation() * b.rotation(),
                        a.rotation() * b.translation() + a.translation(),
                        b.source_frame(), a.target_frame());
}

RigidTransform invert(const RigidTransform& t) {
  const Eigen::Quaterniond r_inv = t.rotation().conjugate();
  return RigidTransform(r_inv, -(r_inv * t.translation()), t.target_frame(),
                        t.source_frame());
}

PoseTrajectory::PoseTrajectory(std::vector<Sample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw Error("PoseTrajectory: at least 2 samples required");
  }
  const std::string& src = samples_.front().pose.source_frame();
  const std::string& tgt = samples_.front().pose.target_frame();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (i > 0 && !(samples_[i].time > samples_[i - 1].time)) {
      throw Error("PoseTrajectory: timestamps must be strictly increasing");
    }
    if (samples_[i].pose.source_frame() != src ||
        samples_[i].pose.target_frame() != tgt) {
      throw FrameMismatchError(src, samples_[i].pose.source_frame());
    }
  }
}

RigidTransform interpolate_pose(const PoseTrajectory& traj, double t) {
  const auto& samples = traj.samples();
  if (!traj.covers(t)) {
    throw TimeRangeError("interpolate_pose: time " + std::to_string(t) +
                         " outside trajectory [" +
                         std::to_string(traj.start_time()) + ", " +
                         std::to_string(traj.end_time()) + "]");
  }
  const auto it = std::lower_bound(
      samples.begin(), samples.end(), t,
      [](const PoseTrajectory::Sample& s, double time) { return s.time < time; });
  if (it != samples.end() && it->time == t) {
    return it->pose;
  }
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double f = (t - lo.time) / (hi.time - lo.time);
  const Eigen::Vector3d translation =
      lo.pose.translation() + f * (hi.pose.translation() - lo.pose.translation());
  const Eigen::Quaterniond rotation =
      lo.pose.rotation().slerp(f, hi.pose.rotation());
  return RigidTransform(rotation, translation, lo.pose.source_frame(),
                        lo.pose.target_frame());
}

CameraModel::CameraModel(std::string camera_id, double fx, double fy,
                         double cx, double cy, int width, int height,
                         RigidTransform extrinsic, double horizontal_fov,
                         double frame_rate)
    : camera_id_(std::move(camera_id)),
      fx_(fx),
      fy_(fy),
      cx_(cx),
      cy_(cy),
      width_(width),
      height_(height),
      extrinsic_(std::move(extrinsic)),
      horizontal_fov_(horizontal_fov),
      frame_rate_(frame_rate) {
  if (fx_ <= 0.0 || fy_ <= 0.0) {
    throw ConfigError("CameraModel '" + camera_id_ +
                      "': focal lengths must be positive");
  }
  if (width_ <= 0 || height_ <= 0) {
    throw ConfigError("CameraModel '" + camera_id_ + "': invalid image size");
  }
  if (cx_ < 0.0 || cx_ >= width_ || cy_ < 0.0 || cy_ >= height_) {
    throw ConfigError("CameraModel '" + camera_id_ +
                      "': principal point outside image bounds");
  }
  if (frame_rate_ <= 0.0) {
    throw ConfigError("CameraModel '" + camera_id_ +
                      "': frame rate must be positive");
  }
  const double implied = 2.0 * std::atan(width_ / (2.0 * fx_));
  if (std::abs(implied - horizontal_fov_) > 0.01 * horizontal_fov_) {
    throw ConfigError("CameraModel '" + camera_id_ +
                      "': horizontal_fov inconsistent with intrinsics");
  }
}

std::string to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::kCar:
      return "car";
    case ObjectClass::kVan:
      return "van";
    case ObjectClass::kTruck:
      return "truck";
    case ObjectClass::kBus:
      return "bus";
    case ObjectClass::kPedestrian:
      return "pedestrian";
    case ObjectClass::kCyclist:
      return "cyclist";
    case ObjectClass::kUnknown:
      break;
  }
  return "unknown";
}

ObjectClass object_class_from_string(const std::string& s) {
  if (s == "car") return ObjectClass::kCar;
  if (s == "van") return ObjectClass::kVan;
  if (s == "truck") return ObjectClass::kTruck;
  if (s == "bus") return ObjectClass::kBus;
  if (s == "pedestrian") return ObjectClass::kPedestrian;
  if (s == "cyclist") return ObjectClass::kCyclist;
  if (s == "unknown") return ObjectClass::kUnknown;
  throw IoError("unknown object class '" + s + "'");
}

std::array<Eigen::Vector3d, 8> Box3D::corners() const {
  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  const Eigen::Vector3d h = 0.5 * dimensions;
  std::array<Eigen::Vector3d, 8> out;
  int k = 0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        out[k++] = center + r * Eigen::Vector3d(sx * h.x(), sy * h.y(),
                                                sz * h.z());
      }
    }
  }
  return out;
}

void Box3D::validate() const {
  if (!(dimensions.x() > 0.0 && dimensions.y() > 0.0 && dimensions.z() > 0.0)) {
    throw DomainError("Box3D: dimensions must be strictly positive");
  }
}

void Box2D::validate() const {
  if (!(max_x > min_x && max_y > min_y)) {
    throw DomainError("Box2D: requires max_x > min_x and max_y > min_y");
  }
}

namespace {

// Projection formula without near-plane/bounds gating; caller guards z.
Eigen::Vector2d pinhole(const CameraModel& cam, const Eigen::Vector3d& p) {
  return {cam.fx() * p.x() / p.z() + cam.cx(),
          cam.fy() * p.y() / p.z() + cam.cy()};
}

}  // namespace

std::optional<Eigen::Vector2d> project_point(const CameraModel& cam,
                                             const Eigen::Vector3d& p_camera) {
  if (p_camera.z() <= kNearPlane) {
    return std::nullopt;
  }
  const Eigen::Vector2d px = pinhole(cam, p_camera);
  if (px.x() < 0.0 || px.x() > cam.width() || px.y() < 0.0 ||
      px.y() > cam.height()) {
    return std::nullopt;
  }
  return px;
}

Eigen::Vector3d back_project_ray(const CameraModel& cam,
                                 const Eigen::Vector2d& pixel) {
  return {(pixel.x() - cam.cx()) / cam.fx(), (pixel.y() - cam.cy()) / cam.fy(),
          1.0};
}

std::optional<Box2D> project_box3d(const CameraModel& cam, const Box3D& box,
                                   const RigidTransform& box_to_camera) {
  if (!box.frame.empty() && box_to_camera.source_frame() != box.frame) {
    throw FrameMismatchError(box.frame, box_to_camera.source_frame());
  }
  double min_x = std::numeric_limits<double>::max();
  double min_y = std::numeric_limits<double>::max();
  double max_x = std::numeric_limits<double>::lowest();
  double max_y = std::numeric_limits<double>::lowest();
  int visible = 0;
  for (const auto& corner : box.corners()) {
    const Eigen::Vector3d p = box_to_camera * corner;
    if (p.z() <= kNearPlane) {
      continue;
    }
    ++visible;
    const Eigen::Vector2d px = pinhole(cam, p);
    min_x = std::min(min_x, px.x());
    min_y = std::min(min_y, px.y());
    max_x = std::max(max_x, px.x());
    max_y = std::max(max_y, px.y());
  }
  if (visible < 2) {
    return std::nullopt;
  }
  min_x = std::clamp(min_x, 0.0, static_cast<double>(cam.width()));
  max_x = std::clamp(max_x, 0.0, static_cast<double>(cam.width()));
  min_y = std::clamp(min_y, 0.0, static_cast<double>(cam.height()));
  max_y = std::clamp(max_y, 0.0, static_cast<double>(cam.height()));
  if (!(max_x > min_x && max_y > min_y)) {
    return std::nullopt;
  }
  return Box2D{min_x, min_y, max_x, max_y};
}

bool point_in_box3d(const Box3D& box, const Eigen::Vector3d& point,
                    double inflation) {
  const Eigen::Matrix3d r_inv =
      Eigen::AngleAxisd(-box.yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  const Eigen::Vector3d local = r_inv * (point - box.center);
  const Eigen::Vector3d h = 0.5 * box.dimensions +
                            Eigen::Vector3d::Constant(inflation);
  return std::abs(local.x()) <= h.x() && std::abs(local.y()) <= h.y() &&
         std::abs(local.z()) <= h.z();
}

}  // namespace rigalign
