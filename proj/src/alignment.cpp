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

#include "rigalign/alignment.hpp"

#include <algorithm>
#include <cmath>

namespace rigalign {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kMembershipInflation = 0.05;  // meters
}  // namespace

std::string to_string(AlignmentStrategy s) {
  switch (s) {
    case AlignmentStrategy::kStamp:
      return "stamp";
    case AlignmentStrategy::kFrame:
      return "frame";
    case AlignmentStrategy::kTarget:
      return "target";
  }
  return "unknown";
}

AlignmentStrategy alignment_strategy_from_string(const std::string& s) {
  if (s == "stamp") return AlignmentStrategy::kStamp;
  if (s == "frame") return AlignmentStrategy::kFrame;
  if (s == "target") return AlignmentStrategy::kTarget;
  throw ConfigError("unknown alignment strategy '" + s +
                    "' (expected stamp|frame|target)");
}

CameraFrameSchedule::CameraFrameSchedule(std::string camera_id,
                                         double nominal_period,
                                         std::vector<double> frame_timestamps)
    : camera_id_(std::move(camera_id)),
      nominal_period_(nominal_period),
      frame_timestamps_(std::move(frame_timestamps)) {
  if (nominal_period_ <= 0.0) {
    throw ScheduleError("CameraFrameSchedule: nominal period must be positive");
  }
  if (frame_timestamps_.empty()) {
    throw ScheduleError("CameraFrameSchedule '" + camera_id_ +
                        "': empty schedule");
  }
  for (std::size_t i = 1; i < frame_timestamps_.size(); ++i) {
    const double delta = frame_timestamps_[i] - frame_timestamps_[i - 1];
    if (delta <= 0.0) {
      throw ScheduleError("CameraFrameSchedule '" + camera_id_ +
                          "': timestamps must be strictly increasing");
    }
    if (std::abs(delta - nominal_period_) > 0.1 * nominal_period_) {
      throw ScheduleError("CameraFrameSchedule '" + camera_id_ +
                          "': frame delta deviates more than 10% from nominal");
    }
  }
}

std::size_t CameraFrameSchedule::nearest_frame(double t) const {
  const auto it = std::lower_bound(frame_timestamps_.begin(),
                                   frame_timestamps_.end(), t);
  if (it == frame_timestamps_.begin()) return 0;
  if (it == frame_timestamps_.end()) return frame_timestamps_.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - frame_timestamps_.begin());
  const std::size_t lo = hi - 1;
  // Exact ties resolve to the earlier frame.
  if (t - frame_timestamps_[lo] <= frame_timestamps_[hi] - t) return lo;
  return hi;
}

std::size_t AlignmentAssignment::subset_size() const {
  std::size_t n = 0;
  for (const IndexRange& r : point_ranges) {
    n += r.end - r.begin;
  }
  return n;
}

bool AlignmentAssignment::contains_index(std::uint32_t index) const {
  for (const IndexRange& r : point_ranges) {
    if (index >= r.begin && index < r.end) return true;
  }
  return false;
}

std::vector<std::uint32_t> AlignmentAssignment::subset_indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(subset_size());
  for (const IndexRange& r : point_ranges) {
    for (std::uint32_t i = r.begin; i < r.end; ++i) {
      out.push_back(i);
    }
  }
  return out;
}

double clockwise_azimuth(const Eigen::Vector3d& direction) {
  return wrap_two_pi(std::atan2(-direction.y(), direction.x()));
}

double camera_axis_azimuth(const CameraModel& cam) {
  // Optical axis (+Z of the camera frame) expressed in the LiDAR frame.
  const Eigen::Vector3d axis =
      cam.extrinsic().rotation().conjugate() * Eigen::Vector3d::UnitZ();
  return clockwise_azimuth(axis);
}

namespace {

// First point index with azimuth >= value (points are azimuth-ordered).
std::uint32_t azimuth_lower_bound(const LidarScan& scan, double value) {
  const auto& pts = scan.points();
  const auto it = std::lower_bound(
      pts.begin(), pts.end(), value,
      [](const LidarPoint& p, double v) { return p.azimuth < v; });
  return static_cast<std::uint32_t>(it - pts.begin());
}

}  // namespace

std::vector<IndexRange> azimuth_wedge_ranges(const LidarScan& scan,
                                             double center,
                                             double half_width) {
  std::vector<IndexRange> out;
  if (scan.empty()) return out;
  if (half_width * 2.0 >= kTwoPi) {
    out.push_back({0, static_cast<std::uint32_t>(scan.size())});
    return out;
  }
  const double lo = wrap_two_pi(center - half_width);
  const double hi = wrap_two_pi(center + half_width);
  if (lo <= hi) {
    const std::uint32_t b = azimuth_lower_bound(scan, lo);
    const std::uint32_t e = azimuth_lower_bound(scan, std::nextafter(hi, 7.0));
    if (e > b) out.push_back({b, e});
  } else {
    // Wedge wraps through the sweep origin: two runs.
    const std::uint32_t e0 = azimuth_lower_bound(scan, std::nextafter(hi, 7.0));
    if (e0 > 0) out.push_back({0, e0});
    const std::uint32_t b1 = azimuth_lower_bound(scan, lo);
    const std::uint32_t n = static_cast<std::uint32_t>(scan.size());
    if (n > b1) out.push_back({b1, n});
  }
  return out;
}

std::optional<double> mean_timestamp(const LidarScan& scan,
                                     const std::vector<IndexRange>& ranges) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const IndexRange& r : ranges) {
    for (std::uint32_t i = r.begin; i < r.end; ++i) {
      sum += scan.points()[i].timestamp;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::vector<AlignmentAssignment> stamp_align(
    const LidarScan& scan, const std::vector<CameraFrameSchedule>& schedules) {
  if (schedules.empty()) {
    throw ScheduleError("stamp_align: no camera schedules");
  }
  std::vector<AlignmentAssignment> out;
  out.reserve(schedules.size());
  for (const CameraFrameSchedule& sched : schedules) {
    AlignmentAssignment a;
    a.camera_id = sched.camera_id();
    a.chosen_frame_time = sched.nearest_frame_time(scan.scan_start());
    a.compensation_time = scan.scan_start();
    a.point_ranges.push_back({0, static_cast<std::uint32_t>(scan.size())});
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

void check_alignment_coverage(const LidarScan& scan,
                              const std::vector<CameraFrameSchedule>& schedules,
                              const PoseTrajectory& traj) {
  if (schedules.empty()) {
    throw ScheduleError("frame_align: no camera schedules");
  }
  for (const CameraFrameSchedule& s : schedules) {
    if (!s.covers(scan.scan_start(), scan.scan_end())) {
      throw ScheduleError("schedule '" + s.camera_id() +
                          "' does not cover the scan interval");
    }
  }
  if (!traj.covers(scan.scan_start()) || !traj.covers(scan.scan_end())) {
    throw TrajectoryCoverageError(
        "alignment: trajectory does not cover the scan interval");
  }
}

const CameraFrameSchedule& schedule_for(
    const std::vector<CameraFrameSchedule>& schedules,
    const std::string& camera_id) {
  for (const CameraFrameSchedule& s : schedules) {
    if (s.camera_id() == camera_id) return s;
  }
  throw ScheduleError("no schedule for camera '" + camera_id + "'");
}

}  // namespace

std::vector<AlignmentAssignment> frame_align(
    const LidarScan& scan, const std::vector<CameraModel>& cameras,
    const std::vector<CameraFrameSchedule>& schedules,
    const PoseTrajectory& traj, const RigidTransform& lidar_extrinsic) {
  check_alignment_coverage(scan, schedules, traj);
  std::vector<AlignmentAssignment> out;
  out.reserve(cameras.size());
  for (const CameraModel& cam : cameras) {
    const CameraFrameSchedule& sched = schedule_for(schedules, cam.camera_id());
    AlignmentAssignment a;
    a.camera_id = cam.camera_id();
    a.point_ranges = azimuth_wedge_ranges(scan, camera_axis_azimuth(cam),
                                          0.5 * cam.horizontal_fov());
    const std::optional<double> rep = mean_timestamp(scan, a.point_ranges);
    // An empty wedge keeps the scan header stamp as its reference.
    const double reference = rep.value_or(scan.scan_start());
    a.chosen_frame_time = sched.nearest_frame_time(reference);
    a.compensation_time = a.chosen_frame_time;
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::uint32_t> object_member_indices(const LidarScan& scan,
                                                 const Box3D& object,
                                                 double inflation) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < scan.size(); ++i) {
    const LidarPoint& p = scan.points()[i];
    if (p.object_id >= 0) {
      if (p.object_id == object.object_id) out.push_back(i);
    } else if (point_in_box3d(object, p.position, inflation)) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<AlignmentAssignment> target_align(
    const LidarScan& scan, const std::vector<Box3D>& objects,
    const std::vector<CameraModel>& cameras,
    const std::vector<CameraFrameSchedule>& schedules,
    const PoseTrajectory& traj, const RigidTransform& lidar_extrinsic) {
  std::vector<AlignmentAssignment> out =
      frame_align(scan, cameras, schedules, traj, lidar_extrinsic);

  for (const Box3D& obj : objects) {
    const std::vector<std::uint32_t> members =
        object_member_indices(scan, obj, kMembershipInflation);
    if (members.empty()) {
      throw ObjectWithoutPointsError("target_align: object " +
                                     std::to_string(obj.object_id) +
                                     " has no member points");
    }
    double sum = 0.0;
    for (std::uint32_t i : members) {
      sum += scan.points()[i].timestamp;
    }
    const double object_time = sum / static_cast<double>(members.size());

    for (std::size_t ci = 0; ci < cameras.size(); ++ci) {
      AlignmentAssignment& a = out[ci];
      const bool observed =
          std::any_of(members.begin(), members.end(),
                      [&](std::uint32_t i) { return a.contains_index(i); });
      if (!observed) continue;
      const CameraFrameSchedule& sched =
          schedule_for(schedules, a.camera_id);
      const double frame_time = sched.nearest_frame_time(object_time);
      a.per_object[obj.object_id] = ObjectAlignment{frame_time, frame_time};
    }
  }
  return out;
}

LidarScan materialize_assignment(const LidarScan& scan,
                                 const AlignmentAssignment& assignment,
                                 const PoseTrajectory& traj,
                                 const RigidTransform& lidar_extrinsic) {
  std::vector<LidarPoint> subset;
  subset.reserve(assignment.subset_size());
  for (const IndexRange& r : assignment.point_ranges) {
    for (std::uint32_t i = r.begin; i < r.end; ++i) {
      subset.push_back(scan.points()[i]);
    }
  }
  LidarScan subset_scan(scan.scan_start(), scan.period(), scan.sensor_frame(),
                        std::move(subset), scan.compensated_to());
  return deskew_to(subset_scan, traj, lidar_extrinsic,
                   assignment.compensation_time);
}

}  // namespace rigalign
