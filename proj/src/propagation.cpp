// SPDX-License-Identifier: Apache-2.0
#include "sixdma/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sixdma {

LocalAngles local_angles(const EulerAngles& u, const Vec3& f) {
  if (std::abs(f.norm() - 1.0) > 1e-9) {
    throw NonUnitDirectionError("local_angles: f must be a unit vector");
  }
  const Vec3 local = -(rotation_matrix(u).transpose() * f);
  const double x = local.x(), y = local.y(), z = local.z();

  LocalAngles a;
  a.theta_t = std::numbers::pi / 2.0 - std::acos(std::clamp(z, -1.0, 1.0));
  const double horiz_sq = x * x + y * y;
  if (horiz_sq < 1e-24) {
    a.phi_t = 0.0;  // azimuth undefined along the local z axis
  } else {
    const double sign = (y >= 0.0) ? 1.0 : -1.0;
    a.phi_t = sign * std::acos(std::clamp(x / std::sqrt(horiz_sq), -1.0, 1.0));
  }
  return a;
}

double element_gain_dbi(const LocalAngles& a, const RadiationPattern& pat) {
  const double loss_h = std::min(12.0 * (a.phi_t / pat.phi_3db) * (a.phi_t / pat.phi_3db), pat.g_s_db);
  const double loss_v =
      std::min(12.0 * (a.theta_t / pat.theta_3db) * (a.theta_t / pat.theta_3db), pat.g_v_db);
  return pat.g_max_dbi - std::min(loss_h + loss_v, pat.g_s_db);
}

double effective_gain_linear(const LocalAngles& a, const RadiationPattern& pat) {
  return std::pow(10.0, element_gain_dbi(a, pat) / 10.0);
}

double path_gain(const Vec3& user_pos, const PathLossModel& plm) {
  const double d = user_pos.norm();
  if (d <= plm.d0) {
    throw TooCloseError("path_gain: user inside the reference distance");
  }
  return plm.eps0 * std::pow(d, -plm.exponent);
}

}  // namespace sixdma
