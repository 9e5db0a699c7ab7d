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

#include "rigalign/scan.hpp"

#include <cmath>
#include <utility>

namespace rigalign {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kTimeSlack = 1e-9;
}  // namespace

double point_timestamp(double scan_start, double azimuth, double period) {
  if (period <= 0.0) {
    throw DomainError("point_timestamp: period must be positive");
  }
  if (azimuth < 0.0 || azimuth >= kTwoPi) {
    throw DomainError("point_timestamp: azimuth " + std::to_string(azimuth) +
                      " outside [0, 2*pi)");
  }
  return scan_start + period * azimuth / kTwoPi;
}

LidarScan::LidarScan(double scan_start, double period,
                     std::string sensor_frame, std::vector<LidarPoint> points,
                     std::optional<double> compensated_to)
    : scan_start_(scan_start),
      period_(period),
      sensor_frame_(std::move(sensor_frame)),
      points_(std::move(points)),
      compensated_to_(compensated_to) {
  if (period_ <= 0.0) {
    throw DomainError("LidarScan: period must be positive");
  }
  double prev_time = scan_start_ - kTimeSlack;
  for (const LidarPoint& p : points_) {
    if (p.azimuth < 0.0 || p.azimuth >= kTwoPi) {
      throw DomainError("LidarScan: point azimuth outside [0, 2*pi)");
    }
    if (p.timestamp < scan_start_ - kTimeSlack ||
        p.timestamp > scan_start_ + period_ + kTimeSlack) {
      throw DomainError("LidarScan: point timestamp outside scan interval");
    }
    if (p.timestamp < prev_time - kTimeSlack) {
      throw DomainError("LidarScan: point timestamps must be non-decreasing");
    }
    prev_time = p.timestamp;
  }
}

LidarScan deskew_to(const LidarScan& scan, const PoseTrajectory& traj,
                    const RigidTransform& lidar_extrinsic, double ref_time) {
  if (lidar_extrinsic.source_frame() != scan.sensor_frame()) {
    throw FrameMismatchError(scan.sensor_frame(),
                             lidar_extrinsic.source_frame());
  }
  if (lidar_extrinsic.target_frame() != traj.source_frame()) {
    throw FrameMismatchError(traj.source_frame(),
                             lidar_extrinsic.target_frame());
  }
  double t_min = ref_time;
  double t_max = ref_time;
  if (!scan.empty()) {
    if (scan.compensated_to().has_value()) {
      t_min = std::min(t_min, *scan.compensated_to());
      t_max = std::max(t_max, *scan.compensated_to());
    } else {
      t_min = std::min(t_min, scan.points().front().timestamp);
      t_max = std::max(t_max, scan.points().back().timestamp);
    }
  }
  if (!traj.covers(t_min) || !traj.covers(t_max)) {
    throw TrajectoryCoverageError(
        "deskew_to: trajectory [" + std::to_string(traj.start_time()) + ", " +
        std::to_string(traj.end_time()) + "] does not cover [" +
        std::to_string(t_min) + ", " + std::to_string(t_max) + "]");
  }

  const auto pose_of_lidar = [&](double t) {
    return compose(interpolate_pose(traj, t), lidar_extrinsic);
  };
  const RigidTransform world_from_ref = pose_of_lidar(ref_time);
  const RigidTransform ref_from_world = invert(world_from_ref);

  std::vector<LidarPoint> out = scan.points();
  if (scan.compensated_to().has_value()) {
    // Points already share one frame; a single remap retargets the scan.
    const RigidTransform remap =
        compose(ref_from_world, pose_of_lidar(*scan.compensated_to()));
    for (LidarPoint& p : out) {
      p.position = remap * p.position;
    }
  } else {
    for (LidarPoint& p : out) {
      const RigidTransform remap =
          compose(ref_from_world, pose_of_lidar(p.timestamp));
      p.position = remap * p.position;
    }
  }
  return LidarScan(scan.scan_start(), scan.period(), scan.sensor_frame(),
                   std::move(out), ref_time);
}

}  // namespace rigalign
