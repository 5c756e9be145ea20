// SPDX-License-Identifier: Apache-2.0
//
// Three-sector comparison schemes. All of them evaluate capacity through
// the same pipeline as the fully movable scheme; only the pose degrees of
// freedom differ: fixed sectors, sectors sliding on a horizontal ring, or
// sectors that may only rotate in place.
#pragma once

#include <array>

#include "sixdma/optimizer.hpp"

namespace sixdma {

struct SectorConfig {
  int sector_count = 3;
  int antennas_per_sector = 22;  // ceil(N * B / 3) of the movable layout
  double downtilt = 0.2617993877991494;  // 15 degrees
  double ring_radius = 0.5;
  std::array<double, 3> azimuths = {0.0, 2.0943951023931953, 4.1887902047863905};
};

// Pose of a sector at ring azimuth psi: center on the ring, boresight
// pointing radially outward tilted `downtilt` below the horizon.
SurfacePose sector_pose(const SectorConfig& sc, double azimuth);

// Fixed deployment: sectors at the configured azimuths, no optimization.
std::vector<SurfacePose> fpa_poses(const SectorConfig& sc);

// Sector antenna panel (near-square planar array).
ArrayLayout sector_layout(const SectorConfig& sc, double antenna_spacing);

// Sector centers slide along the ring (one azimuth variable each, normals
// stay radial with fixed downtilt), optimized by the same
// conditional-gradient/Armijo scheme with arc minimum-distance bounds.
OptimizeResult circular_movement_optimize(const SectorConfig& sc, const EvalContext& ctx,
                                          const PlacementConstraints& pc,
                                          const OptimizerConfig& cfg);

// Sector centers frozen at the fixed deployment; rotations optimized with
// the rotation-step machinery.
OptimizeResult rotation_only_optimize(const SectorConfig& sc, const EvalContext& ctx,
                                      const PlacementConstraints& pc, const OptimizerConfig& cfg);

}  // namespace sixdma
