// SPDX-License-Identifier: Apache-2.0
#include "sixdma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sixdma/rng.hpp"

namespace sixdma {

namespace {

constexpr double kPi = std::numbers::pi;

const ArrayLayout& layout_for(std::span<const ArrayLayout> layouts, std::size_t i) {
  return layouts.size() == 1 ? layouts[0] : layouts[i];
}

}  // namespace

ArrayLayout ArrayLayout::uniform_planar(int n, double spacing) {
  ArrayLayout layout;
  layout.local_offsets.reserve(static_cast<std::size_t>(n));
  const int rows = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  const int r = std::max(rows, 1);
  const int c = (n + r - 1) / r;
  Vec3 centroid = Vec3::Zero();
  for (int k = 0; k < n; ++k) {
    const int i = k / c;
    const int j = k % c;
    Vec3 p(0.0, j * spacing, -i * spacing);
    layout.local_offsets.push_back(p);
    centroid += p;
  }
  centroid /= std::max(n, 1);
  for (auto& p : layout.local_offsets) p -= centroid;
  layout.local_normal = Vec3::UnitX();
  return layout;
}

bool SiteBox::contains(const Vec3& p, double tol) const {
  return violation(p) <= tol;
}

double SiteBox::violation(const Vec3& p) const {
  const Vec3 d = (p - center).cwiseAbs() - half_extents;
  return std::max(0.0, d.maxCoeff());
}

double ConstraintReport::max_violation() const {
  return std::max({site, distance, reflection, blockage});
}

Mat3 rotation_matrix(const EulerAngles& u) {
  const double ca = std::cos(u.alpha), sa = std::sin(u.alpha);
  const double cb = std::cos(u.beta), sb = std::sin(u.beta);
  const double cg = std::cos(u.gamma), sg = std::sin(u.gamma);
  Mat3 r;
  r << ca * cg, ca * sg, -sa,
      sb * sa * cg - cb * sg, sb * sa * sg + cb * cg, ca * sb,
      cb * sa * cg + sb * sg, cb * sa * sg - sb * cg, ca * cb;
  return r;
}

EulerAngles euler_from_matrix(const Mat3& r) {
  if (std::abs(r(0, 2)) >= 1.0 - 1e-9) {
    throw GimbalLockError("euler_from_matrix: |R(0,2)| at gimbal lock");
  }
  EulerAngles u;
  u.alpha = -std::asin(r(0, 2));
  u.beta = std::atan2(r(1, 2), r(2, 2));
  u.gamma = std::atan2(r(0, 1), r(0, 0));
  return u;
}

Mat3 incremental_rotation(const EulerAngles& du) {
  Mat3 r;
  r << 1.0, du.gamma, -du.alpha,
      -du.gamma, 1.0, du.beta,
      du.alpha, -du.beta, 1.0;
  return r;
}

std::vector<Vec3> antenna_positions(const SurfacePose& pose, const ArrayLayout& layout) {
  const Mat3 r = rotation_matrix(pose.u);
  std::vector<Vec3> out;
  out.reserve(layout.local_offsets.size());
  for (const auto& offset : layout.local_offsets) out.push_back(pose.q + r * offset);
  return out;
}

Vec3 surface_normal(const EulerAngles& u, const ArrayLayout& layout) {
  return rotation_matrix(u) * layout.local_normal;
}

ConstraintReport check_constraints(std::span<const SurfacePose> poses,
                                   std::span<const ArrayLayout> layouts,
                                   const PlacementConstraints& pc, double tol) {
  ConstraintReport rep;
  rep.tol = tol;
  const std::size_t b = poses.size();

  std::vector<Vec3> normals(b);
  for (std::size_t i = 0; i < b; ++i) {
    normals[i] = surface_normal(poses[i].u, layout_for(layouts, i));
    rep.site = std::max(rep.site, pc.site.violation(poses[i].q));
    rep.blockage = std::max(rep.blockage, -normals[i].dot(poses[i].q));
  }

  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      if (i == j) continue;
      rep.reflection = std::max(rep.reflection, normals[i].dot(poses[j].q - poses[i].q));
      if (j > i) {
        rep.distance = std::max(rep.distance, pc.d_min - (poses[i].q - poses[j].q).norm());
      }
    }
  }

  // Strict per-antenna reflection diagnostic.
  for (std::size_t j = 0; j < b; ++j) {
    const auto antennas = antenna_positions(poses[j], layout_for(layouts, j));
    for (std::size_t i = 0; i < b; ++i) {
      if (i == j) continue;
      for (const auto& rjn : antennas) {
        rep.per_antenna_reflection =
            std::max(rep.per_antenna_reflection, normals[i].dot(rjn - poses[i].q));
      }
    }
  }

  rep.site = std::max(rep.site, 0.0);
  rep.distance = std::max(rep.distance, 0.0);
  rep.reflection = std::max(rep.reflection, 0.0);
  rep.blockage = std::max(rep.blockage, 0.0);
  rep.per_antenna_reflection = std::max(rep.per_antenna_reflection, 0.0);
  return rep;
}

Vec3 boundary_point(const Vec3& q_j, const Vec3& q_prev, double d_min) {
  const Vec3 diff = q_j - q_prev;
  const double dist = diff.norm();
  if (dist < 1e-12) {
    throw DegenerateDirectionError("boundary_point: coincident centers");
  }
  return q_j - (d_min / dist) * diff;
}

std::vector<SurfacePose> fibonacci_candidates(int count, double radius) {
  if (count < 1) throw std::invalid_argument("fibonacci_candidates: count must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("fibonacci_candidates: radius must be > 0");

  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<SurfacePose> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    // Midpoint lattice keeps every point strictly away from the poles.
    const double z = 1.0 - (2.0 * m + 1.0) / count;
    const double sin_polar = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double azimuth = golden_angle * m;
    const double cz = std::cos(azimuth), sz = std::sin(azimuth);

    // Right-handed orthonormal frame: boresight radial, y along the unit
    // azimuthal direction, z completing the triad.
    const Vec3 radial(sin_polar * cz, sin_polar * sz, z);
    const Vec3 azimuthal(-sz, cz, 0.0);
    Mat3 frame;
    frame.col(0) = radial;
    frame.col(1) = azimuthal;
    frame.col(2) = radial.cross(azimuthal);

    SurfacePose pose;
    pose.q = radius * radial;
    pose.u = euler_from_matrix(frame);
    out.push_back(pose);
  }
  return out;
}

std::vector<SurfacePose> initial_poses(int b, std::span<const SurfacePose> candidates,
                                       double d_min, std::uint64_t seed) {
  const int total = static_cast<int>(candidates.size());
  if (b < 1) throw std::invalid_argument("initial_poses: b must be >= 1");
  if (b > total) throw std::invalid_argument("initial_poses: fewer candidates than surfaces");

  Rng rng(Rng::derive(seed, 0x1717));
  std::vector<int> indices(candidates.size());
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Partial Fisher-Yates draw of b distinct candidate indices.
    for (int i = 0; i < total; ++i) indices[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < b; ++i) {
      const int j = i + static_cast<int>(rng.uniform() * (total - i));
      std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    }

    bool ok = true;
    for (int i = 0; i < b && ok; ++i) {
      for (int j = i + 1; j < b; ++j) {
        const Vec3 d = candidates[static_cast<std::size_t>(indices[static_cast<std::size_t>(i)])].q -
                       candidates[static_cast<std::size_t>(indices[static_cast<std::size_t>(j)])].q;
        if (d.norm() < d_min) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;

    std::vector<SurfacePose> out;
    out.reserve(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) {
      out.push_back(candidates[static_cast<std::size_t>(indices[static_cast<std::size_t>(i)])]);
    }
    return out;
  }
  throw InitializationFailedError("initial_poses: no feasible selection after 1000 draws");
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * kPi;
  double w = std::fmod(a, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

}  // namespace sixdma
