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

#ifndef RIGALIGN_GEOMETRY_HPP_
#define RIGALIGN_GEOMETRY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "rigalign/error.hpp"

namespace rigalign {

/// Distance (meters) of the camera near plane; points at or behind it do not
/// project.
inline constexpr double kNearPlane = 0.1;

/// Wraps an angle to [0, 2*pi).
double wrap_two_pi(double angle);

/// Wraps an angle to (-pi, pi].
double wrap_pi(double angle);

/// An SE(3) transform with frame bookkeeping: maps points expressed in
/// `source_frame` into `target_frame` via x_t = R * x_s + t.
///
/// The quaternion is normalized on construction. Frame labels must chain for
/// composition; mismatches throw FrameMismatchError.
class RigidTransform {
 public:
  RigidTransform();
  RigidTransform(const Eigen::Quaterniond& rotation,
                 const Eigen::Vector3d& translation, std::string source_frame,
                 std::string target_frame);

  static RigidTransform identity(const std::string& frame);

  const Eigen::Quaterniond& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }
  const std::string& source_frame() const { return source_frame_; }
  const std::string& target_frame() const { return target_frame_; }

  /// Applies the transform to a point expressed in the source frame.
  Eigen::Vector3d operator*(const Eigen::Vector3d& point) const {
    return rotation_ * point + translation_;
  }

  /// Homogeneous 4x4 matrix form.
  Eigen::Matrix4d matrix() const;

  /// Rotation angle (radians) of this transform.
  double rotation_angle() const;

 private:
  Eigen::Quaterniond rotation_;
  Eigen::Vector3d translation_;
  std::string source_frame_;
  std::string target_frame_;
};

/// Composition a ∘ b: the transform that first applies b, then a.
/// Requires b.target_frame == a.source_frame.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);

/// Inverse transform; swaps the frame labels.
RigidTransform invert(const RigidTransform& t);

/// Time-ordered vehicle (INS) pose samples supporting interpolation.
class PoseTrajectory {
 public:
  struct Sample {
    double time;
    RigidTransform pose;
  };

  /// Requires at least two samples, strictly increasing timestamps and
  /// uniform frame labels across samples.
  explicit PoseTrajectory(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const { return samples_; }
  double start_time() const { return samples_.front().time; }
  double end_time() const { return samples_.back().time; }
  bool covers(double t) const { return t >= start_time() && t <= end_time(); }

  const std::string& source_frame() const {
    return samples_.front().pose.source_frame();
  }
  const std::string& target_frame() const {
    return samples_.front().pose.target_frame();
  }

 private:
  std::vector<Sample> samples_;
};

/// Pose at time t: translation interpolated linearly, rotation spherically
/// between the bracketing samples. Exact at sample timestamps. Throws
/// TimeRangeError outside [start_time, end_time].
RigidTransform interpolate_pose(const PoseTrajectory& traj, double t);

/// Pinhole camera: intrinsics, image size, mounting extrinsic (camera←LiDAR)
/// and the horizontal field of view it implies.
class CameraModel {
 public:
  CameraModel(std::string camera_id, double fx, double fy, double cx,
              double cy, int width, int height, RigidTransform extrinsic,
              double horizontal_fov, double frame_rate);

  const std::string& camera_id() const { return camera_id_; }
  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  int width() const { return width_; }
  int height() const { return height_; }
  /// camera←LiDAR mounting transform.
  const RigidTransform& extrinsic() const { return extrinsic_; }
  double horizontal_fov() const { return horizontal_fov_; }
  double frame_rate() const { return frame_rate_; }
  double frame_period() const { return 1.0 / frame_rate_; }

 private:
  std::string camera_id_;
  double fx_, fy_, cx_, cy_;
  int width_, height_;
  RigidTransform extrinsic_;
  double horizontal_fov_;
  double frame_rate_;
};

/// Object category of an annotated box.
enum class ObjectClass : std::uint8_t {
  kCar,
  kVan,
  kTruck,
  kBus,
  kPedestrian,
  kCyclist,
  kUnknown,
};

std::string to_string(ObjectClass c);
ObjectClass object_class_from_string(const std::string& s);

/// Oriented 3D box (yaw-only) with a globally unique object id.
struct Box3D {
  Eigen::Vector3d center{Eigen::Vector3d::Zero()};
  /// length (x), width (y), height (z) in the box frame; strictly positive.
  Eigen::Vector3d dimensions{Eigen::Vector3d::Ones()};
  double yaw = 0.0;
  std::int64_t object_id = -1;
  ObjectClass class_label = ObjectClass::kUnknown;
  /// Frame the center/yaw are expressed in.
  std::string frame;

  /// The 8 corners in the declared frame, fixed (±,±,±) order.
  std::array<Eigen::Vector3d, 8> corners() const;

  void validate() const;
};

/// Axis-aligned 2D image box with continuous pixel coordinates.
struct Box2D {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  Eigen::Vector2d center() const {
    return {0.5 * (min_x + max_x), 0.5 * (min_y + max_y)};
  }

  void validate() const;
};

/// Pinhole projection of a point already expressed in the camera frame.
/// Empty when the point is at or behind the near plane or the pixel falls
/// outside [0, width] x [0, height].
std::optional<Eigen::Vector2d> project_point(const CameraModel& cam,
                                             const Eigen::Vector3d& p_camera);

/// Unit-depth ray direction through a pixel (z = 1 in the camera frame).
Eigen::Vector3d back_project_ray(const CameraModel& cam,
                                 const Eigen::Vector2d& pixel);

/// Projects a 3D box into the image: transforms the 8 corners with
/// `box_to_camera`, projects the corners in front of the near plane and
/// returns their axis-aligned hull clamped to the image. Empty when fewer
/// than two corners are in front of the near plane or the clamped hull is
/// degenerate.
std::optional<Box2D> project_box3d(const CameraModel& cam, const Box3D& box,
                                   const RigidTransform& box_to_camera);

/// True when `point` (same frame as the box) lies inside the box inflated by
/// `inflation` meters on every side.
bool point_in_box3d(const Box3D& box, const Eigen::Vector3d& point,
                    double inflation = 0.0);

}  // namespace rigalign

#endif  // RIGALIGN_GEOMETRY_HPP_
