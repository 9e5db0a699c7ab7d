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

#ifndef RIGALIGN_SIMULATOR_HPP_
#define RIGALIGN_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rigalign/alignment.hpp"
#include "rigalign/geometry.hpp"
#include "rigalign/scan.hpp"

namespace rigalign {

/// Closed-form planar motion: constant velocity, or a constant-turn-rate arc
/// when |turn_rate| > 0. Yaw is counter-clockwise about +Z; heading 0 points
/// along +X.
struct MotionSpec {
  Eigen::Vector3d position0{Eigen::Vector3d::Zero()};
  double yaw0 = 0.0;        // radians
  double speed = 0.0;       // m/s along heading
  double turn_rate = 0.0;   // rad/s

  Eigen::Vector3d position_at(double t) const;
  double yaw_at(double t) const;
  Eigen::Vector3d velocity_at(double t) const;
  /// Pose world←frame at time t.
  RigidTransform pose_at(double t, const std::string& source_frame) const;
};

/// Spinning-LiDAR model parameters. The sweep starts at the sensor +X axis
/// and advances clockwise (viewed from above); rings fan evenly across the
/// vertical field of view.
struct LidarConfig {
  double rate = 10.0;                      // Hz
  int rings = 16;
  int azimuth_steps = 900;                 // columns per revolution
  double min_elevation = -25.0 * M_PI / 180.0;
  double max_elevation = 15.0 * M_PI / 180.0;
  double min_range = 0.5;                  // meters
  double max_range = 120.0;                // meters

  double period() const { return 1.0 / rate; }
};

/// Dynamic-object population knobs.
struct ObjectPopulation {
  int count = 8;
  double min_speed = 5.0;   // m/s
  double max_speed = 20.0;  // m/s
  Eigen::Vector2d length_range{3.8, 5.2};
  Eigen::Vector2d width_range{1.7, 2.1};
  Eigen::Vector2d height_range{1.4, 1.9};
};

/// Measurement noise; zero by default so oracle tests stay exact.
struct NoiseConfig {
  double range_sigma = 0.0;             // meters, along the beam
  double timestamp_jitter_sigma = 0.0;  // seconds, per sensor clock
};

/// One simulated vehicle: its motion, LiDAR mounting and camera suite.
struct VehicleConfig {
  std::string id;
  MotionSpec motion;
  RigidTransform t_ins_lidar;  // INS←LiDAR
  std::vector<CameraModel> cameras;
};

/// Full scene description. Vehicles left empty selects the default
/// two-vehicle rig (see default_scene_config).
struct SceneConfig {
  std::uint64_t seed = 0;
  double duration = 0.5;     // seconds
  double camera_rate = 30.0; // Hz
  double ins_rate = 125.0;   // Hz
  LidarConfig lidar;
  NoiseConfig noise;
  ObjectPopulation objects;
  int static_box_count = 10;
  std::vector<VehicleConfig> vehicles;

  void validate() const;
};

/// The seven-camera layout used by the default rig: two forward cameras
/// (wide and tele), four side cameras and one rear camera. Extrinsics are
/// expressed against the vehicle's LiDAR frame.
std::vector<CameraModel> default_camera_layout(const std::string& vehicle_id,
                                               double camera_rate = 30.0);

/// LiDAR-in-INS mounting used by the default rig.
RigidTransform default_lidar_extrinsic(const std::string& vehicle_id);

VehicleConfig default_vehicle_config(const std::string& vehicle_id,
                                     const MotionSpec& motion,
                                     double camera_rate = 30.0);

/// Two vehicles driving the same direction on adjacent lanes.
SceneConfig default_scene_config(std::uint64_t seed);

/// Ground-truth trajectory and shape of one dynamic object.
struct ObjectTruth {
  std::int64_t id = -1;
  ObjectClass class_label = ObjectClass::kCar;
  Eigen::Vector3d dimensions{4.5, 1.9, 1.6};
  MotionSpec motion;

  /// World-frame box at time t (center at mid-height).
  Box3D box_at(double t) const;
};

/// A static world box (building-like), resting on the ground plane.
struct StaticBoxTruth {
  Eigen::Vector3d center{Eigen::Vector3d::Zero()};  // mid-height center
  Eigen::Vector3d dimensions{Eigen::Vector3d::Ones()};
  double yaw = 0.0;
};

/// Exact per-point ground truth captured during simulation: the (noiseless)
/// world-frame surface position the beam sampled and the true acquisition
/// time (immune to clock jitter applied later).
struct PointTruth {
  Eigen::Vector3d world_position{Eigen::Vector3d::Zero()};
  double true_timestamp = 0.0;
};

/// All recorded data for one vehicle.
struct VehicleRecording {
  std::string id;
  RigidTransform t_ins_lidar;
  std::vector<CameraModel> cameras;
  PoseTrajectory trajectory;           // world←INS samples at ins_rate
  std::vector<CameraFrameSchedule> schedules;
  std::vector<LidarScan> scans;
  std::vector<std::vector<PointTruth>> scan_truth;  // parallel to scans

  const CameraModel& camera(const std::string& camera_id) const;
  const CameraFrameSchedule& schedule(const std::string& camera_id) const;
};

/// A simulated clip plus its exact ground truth.
struct SceneRecording {
  SceneConfig config;
  std::string clip_id;
  std::vector<VehicleRecording> vehicles;
  std::vector<ObjectTruth> objects;
  std::vector<StaticBoxTruth> static_boxes;

  /// Exact world←INS pose of a vehicle (closed form, not interpolated).
  RigidTransform true_ins_pose(std::size_t vehicle, double t) const;
  /// Exact world←LiDAR pose of a vehicle.
  RigidTransform true_lidar_pose(std::size_t vehicle, double t) const;
  /// Ground-truth 2D box of `obj` in `camera_id` of `vehicle` at `frame_time`
  /// — the projection of the exact 3D box at that instant.
  std::optional<Box2D> gt_box2d(std::size_t vehicle,
                                const std::string& camera_id,
                                double frame_time,
                                const ObjectTruth& obj) const;
  const ObjectTruth& object_by_id(std::int64_t id) const;
};

/// Generates a scene deterministically from its config (same config, same
/// seed: bit-identical recordings). Scans follow the linear azimuth-time
/// model; moving objects are sampled at their true pose at each beam's
/// acquisition instant.
SceneRecording simulate_scene(const SceneConfig& config);

/// Which onboard clock an offset applies to.
enum class SensorClock : std::uint8_t { kLidar, kIns, kCamera };

/// Shifts the reported timestamps of one sensor by a fixed clock offset.
/// Ground truth is untouched. `camera_id` selects the camera when
/// clock == kCamera and is ignored otherwise.
SceneRecording apply_clock_offset(const SceneRecording& rec,
                                  std::size_t vehicle, SensorClock clock,
                                  double offset,
                                  const std::string& camera_id = "");

/// Draws an independent Gaussian clock offset (std dev `sigma`) for every
/// sensor clock and applies it to the reported timestamps. Deterministic
/// given the recording seed and `salt`.
SceneRecording apply_sync_jitter(const SceneRecording& rec, double sigma,
                                 std::uint64_t salt = 1);

}  // namespace rigalign

#endif  // RIGALIGN_SIMULATOR_HPP_
