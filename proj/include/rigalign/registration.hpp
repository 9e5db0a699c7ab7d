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

#ifndef RIGALIGN_REGISTRATION_HPP_
#define RIGALIGN_REGISTRATION_HPP_

#include <vector>

#include <Eigen/Core>

#include "rigalign/geometry.hpp"
#include "rigalign/scan.hpp"

namespace rigalign {

struct RegistrationParams {
  double voxel_size = 0.5;                    // meters
  double max_correspondence_distance = 1.0;   // meters
  int max_iterations = 50;
  double translation_epsilon = 1e-4;          // meters
  double rotation_epsilon = 1e-4;             // radians
  int neighbor_count_for_covariance = 20;

  void validate() const;
};

struct RegistrationResult {
  RigidTransform transform;   // L1←L2
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;  // meters, RMS over matched correspondences
};

/// Pose-chain initialization of the inter-LiDAR transform:
/// T_L1L2 = (T_I1L1)^-1 ∘ (T_WI1)^-1 ∘ T_WI2 ∘ T_I2L2,
/// mapping vehicle-2 LiDAR coordinates into vehicle-1 LiDAR coordinates.
RigidTransform chain_initial_transform(const RigidTransform& t_i1l1,
                                       const RigidTransform& t_wi1,
                                       const RigidTransform& t_wi2,
                                       const RigidTransform& t_i2l2);

/// Voxel-grid downsampling to centroids; deterministic output order.
std::vector<Eigen::Vector3d> voxel_downsample(
    const std::vector<Eigen::Vector3d>& points, double voxel_size);

/// RMS Euclidean distance over nearest-neighbor correspondences within
/// max_correspondence_distance at the given transform. Infinity when no
/// correspondences match.
double registration_residual(const LidarScan& source, const LidarScan& target,
                             const RigidTransform& transform,
                             const RegistrationParams& params);

/// Generalized ICP refinement of `init` (target←source). Voxel-downsampled
/// clouds, per-point covariances from local neighborhoods with eigenvalues
/// clamped to [1e-3, 1] of the largest, Gauss-Newton updates on SE(3) with a
/// backtracking step so the residual never increases on accepted steps.
/// Both scans must be deskewed. Non-convergence is reported through
/// `converged`, not an error.
RegistrationResult gicp_refine(const LidarScan& source, const LidarScan& target,
                               const RigidTransform& init,
                               const RegistrationParams& params);

}  // namespace rigalign

#endif  // RIGALIGN_REGISTRATION_HPP_
