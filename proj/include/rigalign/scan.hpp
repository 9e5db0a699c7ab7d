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

#ifndef RIGALIGN_SCAN_HPP_
#define RIGALIGN_SCAN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rigalign/geometry.hpp"

namespace rigalign {

/// One return of a spinning LiDAR. The position is expressed in the sensor
/// frame at the acquisition instant (raw scans) or at the scan's compensation
/// reference time (deskewed scans). `object_id` < 0 means no object
/// membership.
struct LidarPoint {
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  double intensity = 0.0;     // dimensionless, [0, 1]
  double azimuth = 0.0;       // radians, [0, 2*pi), sweep order
  double timestamp = 0.0;     // seconds, acquisition instant
  std::int64_t object_id = -1;
};

/// Per-point acquisition time for a linear azimuth-time sweep.
/// azimuth must be in [0, 2*pi), period strictly positive.
double point_timestamp(double scan_start, double azimuth, double period);

/// One full LiDAR revolution. Points are stored in sweep (azimuth) order
/// with non-decreasing timestamps inside [scan_start, scan_start + period].
/// `compensated_to` records the reference time the points were deskewed to;
/// raw scans leave it empty. Original per-point timestamps are kept either
/// way.
class LidarScan {
 public:
  LidarScan(double scan_start, double period, std::string sensor_frame,
            std::vector<LidarPoint> points,
            std::optional<double> compensated_to = std::nullopt);

  double scan_start() const { return scan_start_; }
  double period() const { return period_; }
  double scan_end() const { return scan_start_ + period_; }
  const std::string& sensor_frame() const { return sensor_frame_; }
  const std::vector<LidarPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::optional<double>& compensated_to() const {
    return compensated_to_;
  }

 private:
  double scan_start_;
  double period_;
  std::string sensor_frame_;
  std::vector<LidarPoint> points_;
  std::optional<double> compensated_to_;
};

/// Motion compensation: re-expresses every point in the LiDAR frame as it was
/// at `ref_time`, i.e. p' = T_WL(ref)^-1 * T_WL(t_point) * p with
/// T_WL(t) = interpolate_pose(traj, t) ∘ lidar_extrinsic.
///
/// `lidar_extrinsic` maps LiDAR→INS (source = scan sensor frame, target =
/// trajectory source frame). The trajectory must cover the scan interval and
/// `ref_time`. Deskewing an already-compensated scan re-targets it through
/// the same pose chain.
LidarScan deskew_to(const LidarScan& scan, const PoseTrajectory& traj,
                    const RigidTransform& lidar_extrinsic, double ref_time);

}  // namespace rigalign

#endif  // RIGALIGN_SCAN_HPP_
