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

#include "rigalign/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Geometry>

namespace rigalign {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

Eigen::Quaterniond yaw_quaternion(double yaw) {
  return Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()));
}

// Direction at clockwise angle `a` from +X, viewed from above (+Z up).
Eigen::Vector3d clockwise_direction(double a, double elevation = 0.0) {
  const double c = std::cos(elevation);
  return {c * std::cos(a), -c * std::sin(a), std::sin(elevation)};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = seed * 0x9E3779B97F4A7C15ull;
  h ^= (a + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2));
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= (b + 0x94D049BB133111EBull + (h << 6) + (h >> 2));
  return h;
}

}  // namespace

Eigen::Vector3d MotionSpec::position_at(double t) const {
  if (std::abs(turn_rate) < 1e-12) {
    return position0 +
           speed * t * Eigen::Vector3d(std::cos(yaw0), std::sin(yaw0), 0.0);
  }
  const double yaw = yaw0 + turn_rate * t;
  const double r = speed / turn_rate;
  return position0 + Eigen::Vector3d(r * (std::sin(yaw) - std::sin(yaw0)),
                                     -r * (std::cos(yaw) - std::cos(yaw0)),
                                     0.0);
}

double MotionSpec::yaw_at(double t) const { return yaw0 + turn_rate * t; }

Eigen::Vector3d MotionSpec::velocity_at(double t) const {
  const double yaw = yaw_at(t);
  return speed * Eigen::Vector3d(std::cos(yaw), std::sin(yaw), 0.0);
}

RigidTransform MotionSpec::pose_at(double t,
                                   const std::string& source_frame) const {
  return RigidTransform(yaw_quaternion(yaw_at(t)), position_at(t),
                        source_frame, "world");
}

void SceneConfig::validate() const {
  if (lidar.rate <= 0.0 || camera_rate <= 0.0 || ins_rate <= 0.0) {
    throw ConfigError("SceneConfig: sensor rates must be positive");
  }
  if (duration < 2.0 * lidar.period()) {
    throw ConfigError("SceneConfig: duration must cover at least 2 LiDAR periods");
  }
  if (lidar.rings < 1 || lidar.azimuth_steps < 8) {
    throw ConfigError("SceneConfig: invalid LiDAR beam grid");
  }
  if (lidar.min_elevation >= lidar.max_elevation) {
    throw ConfigError("SceneConfig: invalid LiDAR elevation span");
  }
  if (lidar.min_range <= 0.0 || lidar.min_range >= lidar.max_range) {
    throw ConfigError("SceneConfig: invalid LiDAR range limits");
  }
  if (objects.count < 0 || objects.min_speed < 0.0 ||
      objects.min_speed > objects.max_speed || objects.max_speed > 40.0) {
    throw ConfigError("SceneConfig: invalid object population (speeds <= 40 m/s)");
  }
  if (noise.range_sigma < 0.0 || noise.timestamp_jitter_sigma < 0.0) {
    throw ConfigError("SceneConfig: noise sigmas must be non-negative");
  }
  if (static_box_count < 0) {
    throw ConfigError("SceneConfig: static_box_count must be non-negative");
  }
  for (const VehicleConfig& v : vehicles) {
    if (std::abs(v.motion.speed) > 40.0) {
      throw ConfigError("SceneConfig: vehicle speeds must be <= 40 m/s");
    }
    if (v.id.empty()) {
      throw ConfigError("SceneConfig: vehicle id must not be empty");
    }
  }
}

namespace {

// The default rig mounts the LiDAR with its sweep origin (sensor +X) rotated
// 35 degrees to the left of vehicle-forward, so the sweep crosses the forward
// cameras first, then the right side, the rear and finally the left side.
constexpr double kLidarMountYaw = 35.0 * M_PI / 180.0;

CameraModel make_rig_camera(const std::string& vehicle_id,
                            const std::string& name, double vehicle_cw_yaw,
                            double hfov, int width, int height,
                            double camera_rate) {
  const std::string lidar_frame = vehicle_id + "/lidar";
  const std::string camera_id = vehicle_id + "/" + name;
  // Clockwise yaw of the optical axis in the LiDAR frame.
  const double a = vehicle_cw_yaw + kLidarMountYaw;
  Eigen::Matrix3d r_lidar_cam;
  r_lidar_cam.col(0) = clockwise_direction(a + M_PI / 2.0);  // camera +X (right)
  r_lidar_cam.col(1) = Eigen::Vector3d(0.0, 0.0, -1.0);      // camera +Y (down)
  r_lidar_cam.col(2) = clockwise_direction(a);               // camera +Z (optical)
  const Eigen::Vector3d p_lidar_cam =
      0.25 * clockwise_direction(a) + Eigen::Vector3d(0.0, 0.0, -0.45);
  const Eigen::Matrix3d r_cam_lidar = r_lidar_cam.transpose();
  const RigidTransform extrinsic(Eigen::Quaterniond(r_cam_lidar),
                                 -(r_cam_lidar * p_lidar_cam), lidar_frame,
                                 camera_id);
  const double fx = width / (2.0 * std::tan(hfov / 2.0));
  return CameraModel(camera_id, fx, fx, width / 2.0, height / 2.0, width,
                     height, extrinsic, hfov, camera_rate);
}

}  // namespace

std::vector<CameraModel> default_camera_layout(const std::string& vehicle_id,
                                               double camera_rate) {
  const double deg = M_PI / 180.0;
  std::vector<CameraModel> cams;
  cams.push_back(make_rig_camera(vehicle_id, "cam_front_wide", 0.0, 70.0 * deg,
                                 3840, 2160, camera_rate));
  cams.push_back(make_rig_camera(vehicle_id, "cam_front_tele", 0.0, 30.0 * deg,
                                 3840, 2160, camera_rate));
  cams.push_back(make_rig_camera(vehicle_id, "cam_front_right", 70.0 * deg,
                                 70.0 * deg, 1920, 1536, camera_rate));
  cams.push_back(make_rig_camera(vehicle_id, "cam_rear_right", 160.0 * deg,
                                 70.0 * deg, 1920, 1536, camera_rate));
  cams.push_back(make_rig_camera(vehicle_id, "cam_rear", 180.0 * deg,
                                 70.0 * deg, 3840, 2160, camera_rate));
  cams.push_back(make_rig_camera(vehicle_id, "cam_rear_left", -160.0 * deg,
                                 70.0 * deg, 1920, 1536, camera_rate));
  cams.push_back(make_rig_camera(vehicle_id, "cam_front_left", -70.0 * deg,
                                 70.0 * deg, 1920, 1536, camera_rate));
  return cams;
}

RigidTransform default_lidar_extrinsic(const std::string& vehicle_id) {
  return RigidTransform(yaw_quaternion(kLidarMountYaw),
                        Eigen::Vector3d(1.1, 0.0, 1.6), vehicle_id + "/lidar",
                        vehicle_id + "/ins");
}

VehicleConfig default_vehicle_config(const std::string& vehicle_id,
                                     const MotionSpec& motion,
                                     double camera_rate) {
  VehicleConfig v;
  v.id = vehicle_id;
  v.motion = motion;
  v.t_ins_lidar = default_lidar_extrinsic(vehicle_id);
  v.cameras = default_camera_layout(vehicle_id, camera_rate);
  return v;
}

SceneConfig default_scene_config(std::uint64_t seed) {
  SceneConfig cfg;
  cfg.seed = seed;
  MotionSpec m1;
  m1.position0 = {0.0, 0.0, 0.0};
  m1.speed = 8.0;
  MotionSpec m2;
  m2.position0 = {-18.0, 6.0, 0.0};
  m2.speed = 8.0;
  cfg.vehicles.push_back(default_vehicle_config("v1", m1, cfg.camera_rate));
  cfg.vehicles.push_back(default_vehicle_config("v2", m2, cfg.camera_rate));
  return cfg;
}

Box3D ObjectTruth::box_at(double t) const {
  Box3D box;
  box.center = motion.position_at(t);
  box.center.z() = 0.5 * dimensions.z();
  box.dimensions = dimensions;
  box.yaw = motion.yaw_at(t);
  box.object_id = id;
  box.class_label = class_label;
  box.frame = "world";
  return box;
}

const CameraModel& VehicleRecording::camera(const std::string& camera_id) const {
  for (const CameraModel& c : cameras) {
    if (c.camera_id() == camera_id) return c;
  }
  throw Error("VehicleRecording: unknown camera '" + camera_id + "'");
}

const CameraFrameSchedule& VehicleRecording::schedule(
    const std::string& camera_id) const {
  for (const CameraFrameSchedule& s : schedules) {
    if (s.camera_id() == camera_id) return s;
  }
  throw Error("VehicleRecording: no schedule for camera '" + camera_id + "'");
}

RigidTransform SceneRecording::true_ins_pose(std::size_t vehicle,
                                             double t) const {
  const VehicleConfig& v = config.vehicles.at(vehicle);
  return v.motion.pose_at(t, v.id + "/ins");
}

RigidTransform SceneRecording::true_lidar_pose(std::size_t vehicle,
                                               double t) const {
  return compose(true_ins_pose(vehicle, t),
                 config.vehicles.at(vehicle).t_ins_lidar);
}

std::optional<Box2D> SceneRecording::gt_box2d(std::size_t vehicle,
                                              const std::string& camera_id,
                                              double frame_time,
                                              const ObjectTruth& obj) const {
  const CameraModel& cam = vehicles.at(vehicle).camera(camera_id);
  const RigidTransform world_to_cam =
      compose(cam.extrinsic(), invert(true_lidar_pose(vehicle, frame_time)));
  return project_box3d(cam, obj.box_at(frame_time), world_to_cam);
}

const ObjectTruth& SceneRecording::object_by_id(std::int64_t id) const {
  for (const ObjectTruth& o : objects) {
    if (o.id == id) return o;
  }
  throw Error("SceneRecording: unknown object id " + std::to_string(id));
}

namespace {

struct RayHit {
  double range = std::numeric_limits<double>::infinity();
  double intensity = 0.0;
  std::int64_t object_id = -1;
};

// Slab test of a ray against an oriented box; only entry hits count, so a ray
// starting inside the box misses.
bool ray_oriented_box(const Eigen::Vector3d& origin,
                      const Eigen::Vector3d& dir, const Eigen::Vector3d& center,
                      double yaw, const Eigen::Vector3d& half, double min_s,
                      double max_s, double* s_hit) {
  const Eigen::Matrix3d r_inv =
      Eigen::AngleAxisd(-yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  const Eigen::Vector3d o = r_inv * (origin - center);
  const Eigen::Vector3d d = r_inv * dir;
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    if (std::abs(d[axis]) < 1e-12) {
      if (std::abs(o[axis]) > half[axis]) return false;
      continue;
    }
    double ta = (-half[axis] - o[axis]) / d[axis];
    double tb = (half[axis] - o[axis]) / d[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  if (t0 < min_s || t0 > max_s) return false;
  *s_hit = t0;
  return true;
}

double fractional(double x) { return x - std::floor(x); }

std::vector<double> time_grid(double rate, double duration) {
  std::vector<double> out;
  const long n = std::lround(std::floor(duration * rate + 1e-9));
  out.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) {
    out.push_back(static_cast<double>(k) / rate);
  }
  if (out.back() < duration) {
    out.push_back(duration);
  }
  return out;
}

}  // namespace

SceneRecording simulate_scene(const SceneConfig& config_in) {
  SceneConfig config = config_in;
  if (config.vehicles.empty()) {
    config.vehicles = default_scene_config(config.seed).vehicles;
  }
  config.validate();

  SceneRecording rec;
  rec.config = config;
  rec.clip_id = "clip-" + std::to_string(config.seed);

  std::mt19937_64 rng(mix_seed(config.seed, 0xC1u, 0x5Eu));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Static world: roadside boxes left and right of the lanes.
  for (int i = 0; i < config.static_box_count; ++i) {
    StaticBoxTruth b;
    const double side = (i % 2 == 0) ? 1.0 : -1.0;
    const double x = -40.0 + 160.0 * unit(rng);
    const double y = side * (12.0 + 30.0 * unit(rng));
    const double lx = 4.0 + 10.0 * unit(rng);
    const double ly = 4.0 + 10.0 * unit(rng);
    const double h = 3.0 + 7.0 * unit(rng);
    b.center = {x, y, 0.5 * h};
    b.dimensions = {lx, ly, h};
    b.yaw = kTwoPi * unit(rng);
    rec.static_boxes.push_back(b);
  }

  // Dynamic objects on and around the road.
  const Eigen::Vector3d v1_start = config.vehicles.front().motion.position0;
  for (int i = 0; i < config.objects.count; ++i) {
    ObjectTruth o;
    o.id = i + 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double x = v1_start.x() - 35.0 + 95.0 * unit(rng);
      const double y = -7.0 + 17.0 * unit(rng);
      o.motion.position0 = {x, y, 0.0};
      bool clear = true;
      for (const VehicleConfig& v : config.vehicles) {
        if ((o.motion.position0.head<2>() - v.motion.position0.head<2>())
                .norm() < 7.0) {
          clear = false;
        }
      }
      if (clear) break;
    }
    o.motion.yaw0 = (unit(rng) < 0.5 ? 0.0 : M_PI) + 0.3 * (unit(rng) - 0.5);
    o.motion.speed = config.objects.min_speed +
                     (config.objects.max_speed - config.objects.min_speed) *
                         unit(rng);
    o.motion.turn_rate = (unit(rng) < 0.3) ? 0.24 * (unit(rng) - 0.5) : 0.0;
    const auto range_draw = [&](const Eigen::Vector2d& r) {
      return r.x() + (r.y() - r.x()) * unit(rng);
    };
    o.dimensions = {range_draw(config.objects.length_range),
                    range_draw(config.objects.width_range),
                    range_draw(config.objects.height_range)};
    o.class_label =
        o.dimensions.x() > 5.0 ? ObjectClass::kTruck : ObjectClass::kCar;
    rec.objects.push_back(o);
  }

  const double period = config.lidar.period();
  // Scans must lie fully inside the recorded interval.
  const int scan_count = static_cast<int>(
      std::floor(config.duration * config.lidar.rate + 1e-9));
  const std::vector<double> ins_times =
      time_grid(config.ins_rate, config.duration);
  const std::vector<double> frame_times =
      time_grid(config.camera_rate, config.duration);

  std::vector<double> ring_elevations(config.lidar.rings);
  for (int r = 0; r < config.lidar.rings; ++r) {
    const double f = config.lidar.rings == 1
                         ? 0.5
                         : static_cast<double>(r) / (config.lidar.rings - 1);
    ring_elevations[r] =
        config.lidar.min_elevation +
        f * (config.lidar.max_elevation - config.lidar.min_elevation);
  }

  for (std::size_t vi = 0; vi < config.vehicles.size(); ++vi) {
    const VehicleConfig& vc = config.vehicles[vi];
    VehicleRecording vr{vc.id,
                        vc.t_ins_lidar,
                        vc.cameras,
                        PoseTrajectory([&] {
                          std::vector<PoseTrajectory::Sample> samples;
                          samples.reserve(ins_times.size());
                          for (double t : ins_times) {
                            samples.push_back(
                                {t, vc.motion.pose_at(t, vc.id + "/ins")});
                          }
                          return samples;
                        }()),
                        {},
                        {},
                        {}};

    for (const CameraModel& cam : vc.cameras) {
      vr.schedules.emplace_back(cam.camera_id(), cam.frame_period(),
                                frame_times);
    }

    const std::string lidar_frame = vc.id + "/lidar";
    for (int si = 0; si < scan_count; ++si) {
      const double t0 = si * period;
      std::mt19937_64 noise_rng(mix_seed(config.seed, vi + 1, si + 1));
      std::normal_distribution<double> range_noise(0.0,
                                                   config.noise.range_sigma);
      std::vector<LidarPoint> points;
      std::vector<PointTruth> truth;
      points.reserve(static_cast<std::size_t>(config.lidar.azimuth_steps) *
                     config.lidar.rings / 2);
      truth.reserve(points.capacity());

      struct ObjState {
        Eigen::Vector3d center;
        double yaw;
        Eigen::Vector3d half;
        std::int64_t id;
        double intensity;
      };
      std::vector<ObjState> obj_states;
      obj_states.reserve(rec.objects.size());

      for (int col = 0; col < config.lidar.azimuth_steps; ++col) {
        const double azimuth = kTwoPi * col / config.lidar.azimuth_steps;
        const double t = t0 + period * azimuth / kTwoPi;
        const RigidTransform world_from_lidar =
            compose(vc.motion.pose_at(t, vc.id + "/ins"), vc.t_ins_lidar);
        const Eigen::Matrix3d r_wl = world_from_lidar.rotation().toRotationMatrix();
        const Eigen::Vector3d origin = world_from_lidar.translation();

        // Object poses are sampled at this beam time; that is what skews
        // moving objects inside one revolution.
        obj_states.clear();
        for (const ObjectTruth& o : rec.objects) {
          Eigen::Vector3d c = o.motion.position_at(t);
          c.z() = 0.5 * o.dimensions.z();
          obj_states.push_back({c, o.motion.yaw_at(t), 0.5 * o.dimensions,
                                o.id,
                                0.65 + 0.3 * fractional(o.id * 0.381966)});
        }

        for (int ring = 0; ring < config.lidar.rings; ++ring) {
          const Eigen::Vector3d d_lidar =
              clockwise_direction(azimuth, ring_elevations[ring]);
          const Eigen::Vector3d d_world = r_wl * d_lidar;

          RayHit hit;
          if (d_world.z() < -1e-9) {
            const double s = -origin.z() / d_world.z();
            if (s >= config.lidar.min_range && s <= config.lidar.max_range) {
              hit = {s, 0.25, -1};
            }
          }
          for (std::size_t bi = 0; bi < rec.static_boxes.size(); ++bi) {
            const StaticBoxTruth& b = rec.static_boxes[bi];
            double s;
            if (ray_oriented_box(origin, d_world, b.center, b.yaw,
                                 0.5 * b.dimensions, config.lidar.min_range,
                                 std::min(hit.range, config.lidar.max_range),
                                 &s)) {
              hit = {s, 0.35 + 0.3 * fractional(bi * 0.618034), -1};
            }
          }
          for (const auto& os : obj_states) {
            double s;
            if (ray_oriented_box(origin, d_world, os.center, os.yaw, os.half,
                                 config.lidar.min_range,
                                 std::min(hit.range, config.lidar.max_range),
                                 &s)) {
              hit = {s, os.intensity, os.id};
            }
          }
          if (!std::isfinite(hit.range)) {
            continue;
          }
          double range = hit.range;
          if (config.noise.range_sigma > 0.0) {
            range = std::max(config.lidar.min_range,
                             range + range_noise(noise_rng));
          }
          points.push_back(LidarPoint{range * d_lidar, hit.intensity, azimuth,
                                      t, hit.object_id});
          truth.push_back(PointTruth{origin + hit.range * d_world, t});
        }
      }
      vr.scans.emplace_back(t0, period, lidar_frame, std::move(points));
      vr.scan_truth.push_back(std::move(truth));
    }
    rec.vehicles.push_back(std::move(vr));
  }
  return rec;
}

SceneRecording apply_clock_offset(const SceneRecording& rec,
                                  std::size_t vehicle, SensorClock clock,
                                  double offset, const std::string& camera_id) {
  SceneRecording out = rec;
  VehicleRecording& vr = out.vehicles.at(vehicle);
  switch (clock) {
    case SensorClock::kLidar: {
      std::vector<LidarScan> shifted;
      shifted.reserve(vr.scans.size());
      for (const LidarScan& scan : vr.scans) {
        std::vector<LidarPoint> pts = scan.points();
        for (LidarPoint& p : pts) {
          p.timestamp += offset;
        }
        std::optional<double> comp = scan.compensated_to();
        if (comp.has_value()) *comp += offset;
        shifted.emplace_back(scan.scan_start() + offset, scan.period(),
                             scan.sensor_frame(), std::move(pts), comp);
      }
      vr.scans = std::move(shifted);
      break;
    }
    case SensorClock::kIns: {
      std::vector<PoseTrajectory::Sample> samples = vr.trajectory.samples();
      for (auto& s : samples) {
        s.time += offset;
      }
      vr.trajectory = PoseTrajectory(std::move(samples));
      break;
    }
    case SensorClock::kCamera: {
      bool found = false;
      for (CameraFrameSchedule& sched : vr.schedules) {
        if (sched.camera_id() != camera_id) continue;
        std::vector<double> times = sched.frame_timestamps();
        for (double& t : times) {
          t += offset;
        }
        sched = CameraFrameSchedule(sched.camera_id(), sched.nominal_period(),
                                    std::move(times));
        found = true;
      }
      if (!found) {
        throw Error("apply_clock_offset: unknown camera '" + camera_id + "'");
      }
      break;
    }
  }
  return out;
}

SceneRecording apply_sync_jitter(const SceneRecording& rec, double sigma,
                                 std::uint64_t salt) {
  if (sigma < 0.0) {
    throw ConfigError("apply_sync_jitter: sigma must be non-negative");
  }
  if (sigma == 0.0) {
    return rec;
  }
  std::mt19937_64 rng(mix_seed(rec.config.seed, 0x7177E4u, salt));
  std::normal_distribution<double> offset(0.0, sigma);
  SceneRecording out = rec;
  for (std::size_t vi = 0; vi < out.vehicles.size(); ++vi) {
    out = apply_clock_offset(out, vi, SensorClock::kLidar, offset(rng));
    out = apply_clock_offset(out, vi, SensorClock::kIns, offset(rng));
    for (const CameraModel& cam : out.vehicles[vi].cameras) {
      out = apply_clock_offset(out, vi, SensorClock::kCamera, offset(rng),
                               cam.camera_id());
    }
  }
  return out;
}

}  // namespace rigalign
