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

#ifndef RIGALIGN_EVALUATION_HPP_
#define RIGALIGN_EVALUATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigalign/alignment.hpp"
#include "rigalign/geometry.hpp"
#include "rigalign/simulator.hpp"

namespace rigalign {

/// Intersection-over-union of two 2D boxes; 0 when disjoint.
double iou(const Box2D& a, const Box2D& b);

/// Euclidean distance between box centers, pixels.
double center_offset(const Box2D& a, const Box2D& b);

/// One projected-vs-ground-truth comparison. A missed object (ground truth
/// present, projection empty) carries iou = 0 and no center offset.
struct MatchRecord {
  std::int64_t object_id = -1;
  std::string camera_id;
  std::optional<Box2D> projected;
  Box2D ground_truth;
  double iou = 0.0;
  std::optional<double> center_offset;
};

/// Fraction of ground-truth boxes whose projection reaches iou >= threshold.
/// Throws on an empty match list.
double recall_at(const std::vector<MatchRecord>& matches, double threshold);

/// Mean iou over all records.
double average_iou(const std::vector<MatchRecord>& matches);

/// Mean center offset over records with a non-empty projection; nullopt when
/// none have one.
std::optional<double> mean_center_offset(const std::vector<MatchRecord>& matches);

/// Relative differences of one strategy row against the stamp baseline,
/// as fractions ((x - baseline) / baseline).
struct MetricsDeltas {
  double average_iou = 0.0;
  std::map<double, double> recall_at;
  double mean_center_offset = 0.0;
};

struct MetricsRow {
  std::string strategy;
  double average_iou = 0.0;
  std::map<double, double> recall_at;
  double mean_center_offset_px = 0.0;
  std::size_t record_count = 0;
  std::optional<MetricsDeltas> deltas_vs_stamp;
};

struct MetricsTable {
  std::vector<double> thresholds{0.3, 0.5, 0.7};
  std::vector<MetricsRow> rows;
};

/// Renders the comparison table as aligned plain text (4 decimals for IoU and
/// recall, 2 for pixels, signed percent deltas against the stamp row).
std::string format_metrics_table(const MetricsTable& table);

/// All per-scan alignment assignments of one strategy for one vehicle,
/// indexed [scan][camera].
struct StrategyAssignments {
  AlignmentStrategy strategy = AlignmentStrategy::kStamp;
  std::vector<std::vector<AlignmentAssignment>> per_scan;
};

/// Runs the given strategy over every scan of a vehicle.
StrategyAssignments align_recording(const SceneRecording& rec,
                                    std::size_t vehicle,
                                    AlignmentStrategy strategy);

/// Builds projected-vs-ground-truth records for every (scan, camera, object)
/// whose ground-truth 2D box exists at the strategy's chosen frame. The
/// projected box models what a consumer of the aligned data would draw: the
/// annotated 3D box at the time the LiDAR captured the object, carried
/// through the strategy's compensation and the camera chain.
/// `camera_filter` (camera ids) restricts the evaluated cameras when
/// non-empty.
std::vector<MatchRecord> collect_match_records(
    const SceneRecording& rec, std::size_t vehicle,
    const StrategyAssignments& assignments,
    const std::vector<std::string>& camera_filter = {});

/// Evaluates several strategies on identical scenes and emits one row per
/// strategy with percent deltas against the stamp baseline. Throws
/// SceneMismatchError when the strategy runs disagree on scan/camera
/// structure.
MetricsTable evaluate_alignment(
    const SceneRecording& rec, std::size_t vehicle,
    const std::vector<StrategyAssignments>& strategies,
    const std::vector<double>& thresholds = {0.3, 0.5, 0.7},
    const std::vector<std::string>& camera_filter = {});

}  // namespace rigalign

#endif  // RIGALIGN_EVALUATION_HPP_
