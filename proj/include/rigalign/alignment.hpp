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

#ifndef RIGALIGN_ALIGNMENT_HPP_
#define RIGALIGN_ALIGNMENT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rigalign/geometry.hpp"
#include "rigalign/scan.hpp"

namespace rigalign {

/// The three temporal-alignment strategies.
enum class AlignmentStrategy : std::uint8_t { kStamp, kFrame, kTarget };

std::string to_string(AlignmentStrategy s);
AlignmentStrategy alignment_strategy_from_string(const std::string& s);

/// Trigger times of one camera. Timestamps must be strictly increasing with
/// consecutive deltas within ±10% of the nominal period.
class CameraFrameSchedule {
 public:
  CameraFrameSchedule(std::string camera_id, double nominal_period,
                      std::vector<double> frame_timestamps);

  const std::string& camera_id() const { return camera_id_; }
  double nominal_period() const { return nominal_period_; }
  const std::vector<double>& frame_timestamps() const {
    return frame_timestamps_;
  }

  /// Index of the frame whose timestamp is nearest to t; exact ties pick the
  /// earlier frame.
  std::size_t nearest_frame(double t) const;
  double nearest_frame_time(double t) const {
    return frame_timestamps_[nearest_frame(t)];
  }
  bool covers(double begin, double end) const {
    return frame_timestamps_.front() <= begin &&
           frame_timestamps_.back() >= end;
  }

 private:
  std::string camera_id_;
  double nominal_period_;
  std::vector<double> frame_timestamps_;
};

/// Contiguous index run [begin, end) into a scan's point array.
struct IndexRange {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

/// Target-based per-object override: the frame the object was associated
/// with and the time its points were compensated to.
struct ObjectAlignment {
  double frame_time = 0.0;
  double compensation_time = 0.0;
};

/// The outcome of aligning one scan with one camera: which frame was chosen,
/// which points belong to the camera and what reference time they were (or
/// are to be) compensated to. Point subsets are stored as contiguous
/// azimuth-ordered runs.
struct AlignmentAssignment {
  std::string camera_id;
  double chosen_frame_time = 0.0;
  double compensation_time = 0.0;
  std::vector<IndexRange> point_ranges;
  std::map<std::int64_t, ObjectAlignment> per_object;

  std::size_t subset_size() const;
  bool contains_index(std::uint32_t index) const;
  std::vector<std::uint32_t> subset_indices() const;
};

/// Clockwise (viewed from above) azimuth of a direction in the sensor frame,
/// wrapped to [0, 2*pi). Matches the sweep parameterization of LidarScan.
double clockwise_azimuth(const Eigen::Vector3d& direction);

/// Sweep azimuth of a camera's optical axis, derived from its mounting
/// extrinsic.
double camera_axis_azimuth(const CameraModel& cam);

/// Index runs of scan points whose azimuth lies within ±half_width of
/// center (wrapped). At most two runs.
std::vector<IndexRange> azimuth_wedge_ranges(const LidarScan& scan,
                                             double center,
                                             double half_width);

/// Mean point timestamp over a set of index runs; empty runs yield nullopt.
std::optional<double> mean_timestamp(const LidarScan& scan,
                                     const std::vector<IndexRange>& ranges);

/// Stamp-based alignment: every camera is associated with the frame nearest
/// the scan header stamp; all points, no compensation (compensation_time =
/// scan_start).
std::vector<AlignmentAssignment> stamp_align(
    const LidarScan& scan, const std::vector<CameraFrameSchedule>& schedules);

/// Frame-based alignment: per camera, the FOV-wedge subset of points is
/// associated with the frame nearest the subset's mean acquisition time and
/// compensated to it. Cameras whose wedge is empty get an empty subset and
/// fall back to the scan header stamp.
std::vector<AlignmentAssignment> frame_align(
    const LidarScan& scan, const std::vector<CameraModel>& cameras,
    const std::vector<CameraFrameSchedule>& schedules,
    const PoseTrajectory& traj, const RigidTransform& lidar_extrinsic);

/// Target-based alignment: frame-based for the background, plus per-object
/// overrides — each object is associated, in every camera observing it, with
/// the frame nearest the mean timestamp of its member points, and its points
/// are compensated to that frame time. Membership comes from point object
/// ids when present, otherwise from a 5 cm-inflated box test.
std::vector<AlignmentAssignment> target_align(
    const LidarScan& scan, const std::vector<Box3D>& objects,
    const std::vector<CameraModel>& cameras,
    const std::vector<CameraFrameSchedule>& schedules,
    const PoseTrajectory& traj, const RigidTransform& lidar_extrinsic);

/// Indices of scan points belonging to `object` (id match, or inflated box
/// containment for points without ids).
std::vector<std::uint32_t> object_member_indices(const LidarScan& scan,
                                                 const Box3D& object,
                                                 double inflation = 0.05);

/// Materializes an assignment: the subset scan deskewed to the assignment's
/// compensation time.
LidarScan materialize_assignment(const LidarScan& scan,
                                 const AlignmentAssignment& assignment,
                                 const PoseTrajectory& traj,
                                 const RigidTransform& lidar_extrinsic);

}  // namespace rigalign

#endif  // RIGALIGN_ALIGNMENT_HPP_
