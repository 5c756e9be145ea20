// SPDX-License-Identifier: Apache-2.0
//
// Rigid-body pose math for movable antenna surfaces: Euler-angle rotation
// matrices, antenna placement, deployment-constraint evaluation, the
// boundary-point linearization primitive, and Fibonacci-sphere initial
// pose generation.
#pragma once

#include <span>
#include <vector>

#include "sixdma/types.hpp"

namespace sixdma {

// Rotation parameters (radians) about the global x, y and z axes. Angles
// are kept unnormalized inside arithmetic; wrap_angle() is for I/O only.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// One surface: center position in the global frame plus its rotation.
struct SurfacePose {
  Vec3 q = Vec3::Zero();
  EulerAngles u;
};

// Antenna offsets and outward normal in a surface's local frame. The
// local x axis is the boresight; the default planar layout lies in the
// local y-z plane.
struct ArrayLayout {
  std::vector<Vec3> local_offsets;
  Vec3 local_normal = Vec3::UnitX();

  int count() const { return static_cast<int>(local_offsets.size()); }

  // Near-square uniform planar array of n antennas at the given spacing,
  // centered on the origin, normal along local x.
  static ArrayLayout uniform_planar(int n, double spacing);
};

// Axis-aligned convex site space the surface centers must stay inside.
struct SiteBox {
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3(0.5, 0.5, 0.5);

  bool contains(const Vec3& p, double tol = 0.0) const;
  // Largest violation of the box bounds at p (0 when inside).
  double violation(const Vec3& p) const;
  double inscribed_radius() const { return half_extents.minCoeff(); }
};

struct PlacementConstraints {
  double d_min = 0.15088834764831843;  // (sqrt(2)/2 + 1/2) * 0.125 m
  SiteBox site;
};

// Worst violation magnitude per constraint family (all 0 when feasible).
struct ConstraintReport {
  double site = 0.0;        // box containment of centers
  double distance = 0.0;    // pairwise center spacing >= d_min
  double reflection = 0.0;  // n_b . (q_j - q_b) <= 0
  double blockage = 0.0;    // n_b . q_b >= 0
  // Strict per-antenna form of the reflection constraint, evaluated as a
  // diagnostic only (the optimizer enforces the center-based relaxation).
  double per_antenna_reflection = 0.0;
  double tol = 1e-9;

  double max_violation() const;
  bool feasible() const { return max_violation() <= tol; }
};

// Rotation matrix R(u). Normative form: the fully expanded matrix (rows
// below), which the incremental small-angle matrix and the Euler
// extraction are consistent with:
//   [ ca*cg            ca*sg            -sa   ]
//   [ sb*sa*cg-cb*sg   sb*sa*sg+cb*cg   ca*sb ]
//   [ cb*sa*cg+sb*sg   cb*sa*sg-sb*cg   ca*cb ]
Mat3 rotation_matrix(const EulerAngles& u);

// Inverse of rotation_matrix away from gimbal lock (|R(0,2)| ~ 1).
// Throws GimbalLockError when |R(0,2)| >= 1 - 1e-9.
EulerAngles euler_from_matrix(const Mat3& r);

// First-order rotation increment: affine in du, equals rotation_matrix(du)
// up to O(|du|^2).
Mat3 incremental_rotation(const EulerAngles& du);

// Global antenna positions r_n = q + R(u) * offset_n.
std::vector<Vec3> antenna_positions(const SurfacePose& pose, const ArrayLayout& layout);

// Outward surface normal n(u) = R(u) * local_normal.
Vec3 surface_normal(const EulerAngles& u, const ArrayLayout& layout);

// Evaluate every deployment constraint family over a set of surfaces.
// `layouts` must have one entry per pose (or exactly one, shared by all).
ConstraintReport check_constraints(std::span<const SurfacePose> poses,
                                   std::span<const ArrayLayout> layouts,
                                   const PlacementConstraints& pc, double tol = 1e-9);

// Point at distance d_min from q_j along the ray toward q_prev; the
// supporting halfspace through it excludes the open ball of radius d_min
// around q_j. Throws DegenerateDirectionError when q_j ~ q_prev.
Vec3 boundary_point(const Vec3& q_j, const Vec3& q_prev, double d_min);

// Near-uniform candidate poses on the sphere of the given radius about
// the site origin, each oriented with boresight radially outward. Every
// candidate satisfies the blockage and pairwise reflection constraints
// exactly.
std::vector<SurfacePose> fibonacci_candidates(int count, double radius);

// Draw b distinct candidates uniformly at random (seeded), re-drawing
// until the pairwise minimum-distance constraint holds. Throws
// InitializationFailedError after 1000 failed draws and
// std::invalid_argument when b exceeds the candidate count.
std::vector<SurfacePose> initial_poses(int b, std::span<const SurfacePose> candidates,
                                       double d_min, std::uint64_t seed);

// Wrap an angle into [0, 2*pi); used at serialization boundaries only.
double wrap_angle(double a);

}  // namespace sixdma
