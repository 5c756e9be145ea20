// SPDX-License-Identifier: Apache-2.0
#include "sixdma/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace sixdma {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_to_pi(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

double chord(double ring_radius, double dpsi) {
  return 2.0 * ring_radius * std::abs(std::sin(0.5 * dpsi));
}

}  // namespace

SurfacePose sector_pose(const SectorConfig& sc, double azimuth) {
  const double el = -sc.downtilt;
  const double ce = std::cos(el), se = std::sin(el);
  const double ca = std::cos(azimuth), sa = std::sin(azimuth);

  const Vec3 boresight(ce * ca, ce * sa, se);
  const Vec3 azimuthal(-sa, ca, 0.0);
  Mat3 frame;
  frame.col(0) = boresight;
  frame.col(1) = azimuthal;
  frame.col(2) = boresight.cross(azimuthal);

  SurfacePose pose;
  pose.q = sc.ring_radius * Vec3(ca, sa, 0.0);
  pose.u = euler_from_matrix(frame);
  return pose;
}

std::vector<SurfacePose> fpa_poses(const SectorConfig& sc) {
  std::vector<SurfacePose> poses;
  poses.reserve(static_cast<std::size_t>(sc.sector_count));
  for (int i = 0; i < sc.sector_count; ++i) {
    poses.push_back(sector_pose(sc, sc.azimuths[static_cast<std::size_t>(i)]));
  }
  return poses;
}

ArrayLayout sector_layout(const SectorConfig& sc, double antenna_spacing) {
  return ArrayLayout::uniform_planar(sc.antennas_per_sector, antenna_spacing);
}

OptimizeResult rotation_only_optimize(const SectorConfig& sc, const EvalContext& ctx,
                                      const PlacementConstraints& pc,
                                      const OptimizerConfig& cfg) {
  AlternatingOptions opts;
  opts.move_positions = false;
  return alternating_optimize(fpa_poses(sc), ctx, pc, cfg, opts);
}

OptimizeResult circular_movement_optimize(const SectorConfig& sc, const EvalContext& ctx,
                                          const PlacementConstraints& pc,
                                          const OptimizerConfig& cfg) {
  const int count = sc.sector_count;
  std::vector<double> psi(sc.azimuths.begin(), sc.azimuths.begin() + count);

  OptimizeResult result;
  result.poses = fpa_poses(sc);
  auto& poses = result.poses;
  auto& trace = result.trace;

  const auto full_objective = [&] {
    return avg_capacity(poses, ctx.layouts, ctx.drops, ctx.pattern, ctx.tx_power, ctx.noise_power,
                        ctx.wavelength, ctx.exec);
  };
  const auto violation_now = [&] {
    return check_constraints(poses, ctx.layouts, pc).max_violation();
  };

  trace.objective.push_back(full_objective());
  trace.max_violation.push_back(violation_now());

  // Arc separation equivalent to the chord minimum distance.
  const double arc_min =
      2.0 * std::asin(std::min(1.0, pc.d_min / (2.0 * sc.ring_radius)));
  const int s = static_cast<int>(ctx.drops.size());

  for (int t = 0; t < cfg.outer_iters; ++t) {
    double iter_violation = 0.0;

    for (int b = 0; b < count; ++b) {
      // Small surface count: rebuild the exclusion Grams directly.
      std::vector<GramCache> caches(static_cast<std::size_t>(s));
      for (int i = 0; i < s; ++i) {
        const auto blocks = drop_blocks(poses, ctx.layouts, ctx.drops[static_cast<std::size_t>(i)],
                                        ctx.pattern, ctx.tx_power, ctx.wavelength);
        caches[static_cast<std::size_t>(i)] = build_gram_excluding(blocks, b);
      }

      const auto objective = [&](double angle) {
        return partial_objective(sector_pose(sc, angle), ctx.layout(b), caches, ctx.drops,
                                 ctx.pattern, ctx.tx_power, ctx.noise_power, ctx.wavelength,
                                 ctx.exec);
      };
      const auto chord_feasible = [&](double angle) {
        for (int j = 0; j < count; ++j) {
          if (j == b) continue;
          if (chord(sc.ring_radius, angle - psi[static_cast<std::size_t>(j)]) <
              pc.d_min - 1e-12) {
            return false;
          }
        }
        return true;
      };

      for (int it = 0; it < cfg.inner_iters; ++it) {
        const double p0 = psi[static_cast<std::size_t>(b)];
        const double f0 = objective(p0);
        const double grad = (objective(p0 + cfg.fd_step) - f0) / cfg.fd_step;

        // Feasible arc around the current azimuth, bounded by neighbors.
        double lo = p0 - kPi / 2.0;
        double hi = p0 + kPi / 2.0;
        for (int j = 0; j < count; ++j) {
          if (j == b) continue;
          const double delta = wrap_to_pi(p0 - psi[static_cast<std::size_t>(j)]);
          if (delta >= 0.0) {
            lo = std::max(lo, p0 - (delta - arc_min));
          } else {
            hi = std::min(hi, p0 + (-delta - arc_min));
          }
        }

        const double target = grad >= 0.0 ? hi : lo;
        const double gap = grad * (target - p0);
        if (gap <= 1e-14) continue;

        double tau = cfg.tau_ini;
        for (int k = 0; k <= cfg.max_backtracks; ++k) {
          const double p_new = p0 + tau * (target - p0);
          const double f_new = objective(p_new);
          if (f_new - f0 >= cfg.armijo_slope * tau * gap && chord_feasible(p_new)) {
            psi[static_cast<std::size_t>(b)] = p_new;
            poses[static_cast<std::size_t>(b)] = sector_pose(sc, p_new);
            trace.accepted_tau.push_back(tau);
            iter_violation = std::max(iter_violation, violation_now());
            break;
          }
          tau *= cfg.armijo_shrink;
        }
      }
    }

    const double obj = full_objective();
    trace.objective.push_back(obj);
    trace.max_violation.push_back(std::max(iter_violation, violation_now()));

    const double prev = trace.objective[trace.objective.size() - 2];
    if (obj - prev < cfg.conv_tol * std::max(std::abs(prev), 1e-12)) break;
  }
  return result;
}

}  // namespace sixdma
