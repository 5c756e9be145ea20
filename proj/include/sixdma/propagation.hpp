// SPDX-License-Identifier: Apache-2.0
//
// Directional element gain and large-scale path gain.
//
// Direction convention used throughout: `f` is the unit propagation vector
// of an uplink signal, pointing from the user toward the array reference
// point, so -f points back at the user and a surface whose boresight faces
// the user sees it at local angles (0, 0).
#pragma once

#include "sixdma/geometry.hpp"
#include "sixdma/types.hpp"

namespace sixdma {

// Parabolic-in-dB element pattern with front-back and sidelobe clipping.
struct RadiationPattern {
  double g_max_dbi = 8.0;
  double g_s_db = 25.0;  // front-back ratio / total attenuation clip
  double g_v_db = 25.0;  // vertical sidelobe clip
  double theta_3db = 65.0 * 0.017453292519943295;  // radians
  double phi_3db = 65.0 * 0.017453292519943295;    // radians
};

struct PathLossModel {
  // Free-space reference gain at 1 m for a 0.125 m carrier, and the
  // free-space exponent matching the pure line-of-sight channel model.
  double eps0 = 1e-4;
  double exponent = 2.0;
  double d0 = 1.0;  // reference distance, meters
};

// Signal direction seen in a surface's local frame: elevation in
// [-pi/2, pi/2], azimuth in [-pi, pi].
struct LocalAngles {
  double theta_t = 0.0;
  double phi_t = 0.0;
};

// Project -f into the local frame of a surface rotated by u. Azimuth of a
// signal arriving along the local +-z axis is defined as 0. Throws
// NonUnitDirectionError unless |f| = 1 within 1e-9.
LocalAngles local_angles(const EulerAngles& u, const Vec3& f);

// Element gain in dBi; always within [g_max - g_s, g_max].
double element_gain_dbi(const LocalAngles& a, const RadiationPattern& pat);

// 10^(dBi/10).
double effective_gain_linear(const LocalAngles& a, const RadiationPattern& pat);

// nu = eps0 * d^-exponent with d the distance from the user to the array
// reference point. Throws TooCloseError when d <= d0.
double path_gain(const Vec3& user_pos, const PathLossModel& plm);

}  // namespace sixdma
