// SPDX-License-Identifier: Apache-2.0
#include "sixdma/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sixdma {

namespace {

constexpr double kGapEps = 1e-14;    // Frank-Wolfe gap below which a step is skipped
constexpr double kFeasTol = 1e-9;    // feasibility slack for current-point checks

// Forward-difference gradient reusing a precomputed f(x0).
Vec3 fd_gradient_at(const std::function<double(const Vec3&)>& objective, const Vec3& x0,
                    double f0, double eps) {
  Vec3 g;
  for (int j = 0; j < 3; ++j) {
    Vec3 x = x0;
    x(j) += eps;
    const double fj = objective(x);
    if (!std::isfinite(fj)) {
      throw NonFiniteObjectiveError("fd_gradient: objective not finite at perturbation");
    }
    g(j) = (fj - f0) / eps;
  }
  return g;
}

void require_current_point_feasible(const LinearProgram3& lp, const Vec3& x, const char* where) {
  for (const auto& hs : lp.constraints) {
    if (hs.a.dot(x) > hs.b + kFeasTol) {
      throw std::logic_error(std::string(where) +
                             ": current iterate violates its own linearized feasible set");
    }
  }
}

void add_box(LinearProgram3& lp, const Vec3& center, const Vec3& half) {
  for (int i = 0; i < 3; ++i) {
    Vec3 axis = Vec3::Zero();
    axis(i) = 1.0;
    lp.constraints.push_back({axis, center(i) + half(i)});
    lp.constraints.push_back({-axis, -(center(i) - half(i))});
  }
}

// Coefficients of (R(du) * n_local) . v as an affine function of du:
// value(du) = n_local . v + coeffs . du.
Vec3 rotated_normal_dot_coeffs(const Vec3& n_local, const Vec3& v) {
  return Vec3(n_local.x() * v.z() - n_local.z() * v.x(),
              n_local.z() * v.y() - n_local.y() * v.z(),
              n_local.y() * v.x() - n_local.x() * v.y());
}

}  // namespace

void ConvergenceTrace::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open trace file " + path);
  out << "outer_iter,objective_bps_hz,max_violation\n";
  char buf[128];
  for (std::size_t i = 0; i < objective.size(); ++i) {
    const double viol = i < max_violation.size() ? max_violation[i] : 0.0;
    std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g\n", i, objective[i], viol);
    out << buf;
  }
  if (!out) throw IoError("failed writing trace file " + path);
}

StepResult position_step(int b, std::vector<SurfacePose>& poses, std::span<const GramCache> caches,
                         const EvalContext& ctx, const PlacementConstraints& pc,
                         const OptimizerConfig& cfg) {
  const ArrayLayout& layout = ctx.layout(b);
  const EulerAngles u_b = poses[static_cast<std::size_t>(b)].u;
  const Vec3 q0 = poses[static_cast<std::size_t>(b)].q;

  const auto objective = [&](const Vec3& q) {
    return partial_objective({q, u_b}, layout, caches, ctx.drops, ctx.pattern, ctx.tx_power,
                             ctx.noise_power, ctx.wavelength, ctx.exec);
  };

  const double f0 = objective(q0);
  if (!std::isfinite(f0)) throw NonFiniteObjectiveError("position_step: objective not finite");
  const Vec3 grad = fd_gradient_at(objective, q0, f0, cfg.fd_step);

  LinearProgram3 lp;
  lp.objective = -grad;
  add_box(lp, pc.site.center, pc.site.half_extents);

  const Vec3 n_b = surface_normal(u_b, layout);
  lp.constraints.push_back({-n_b, 0.0});  // keep facing away from the hub
  for (int j = 0; j < static_cast<int>(poses.size()); ++j) {
    if (j == b) continue;
    const Vec3& q_j = poses[static_cast<std::size_t>(j)].q;
    // Supporting halfspace of the minimum-distance ball around q_j.
    const Vec3 bdry = boundary_point(q_j, q0, pc.d_min);
    const Vec3 a = q_j - q0;
    lp.constraints.push_back({a, a.dot(bdry)});
    // Own reflection plane keeps q_j behind this surface...
    lp.constraints.push_back({-n_b, -n_b.dot(q_j)});
    // ...and surface j's plane keeps this center behind surface j.
    const Vec3 n_j = surface_normal(poses[static_cast<std::size_t>(j)].u, ctx.layout(j));
    lp.constraints.push_back({n_j, n_j.dot(q_j)});
  }

  require_current_point_feasible(lp, q0, "position_step");
  const Vec3 target = solve_lp3(lp);

  const Vec3 dir = target - q0;
  const double gap = grad.dot(dir);
  if (gap <= kGapEps) return {false, 0.0, f0};

  double tau = cfg.tau_ini;
  for (int k = 0; k <= cfg.max_backtracks; ++k) {
    const Vec3 q_new = q0 + tau * dir;
    const double f_new = objective(q_new);
    if (f_new - f0 >= cfg.armijo_slope * tau * gap) {
      poses[static_cast<std::size_t>(b)].q = q_new;
      return {true, tau, f_new};
    }
    tau *= cfg.armijo_shrink;
  }
  return {false, 0.0, f0};
}

StepResult rotation_step(int b, std::vector<SurfacePose>& poses, std::span<const GramCache> caches,
                         const EvalContext& ctx, const PlacementConstraints& pc,
                         const OptimizerConfig& cfg) {
  (void)pc;
  const ArrayLayout& layout = ctx.layout(b);
  const Vec3 q_b = poses[static_cast<std::size_t>(b)].q;
  const EulerAngles u0 = poses[static_cast<std::size_t>(b)].u;
  const Vec3 u0_vec(u0.alpha, u0.beta, u0.gamma);

  const auto objective = [&](const Vec3& u) {
    return partial_objective({q_b, {u.x(), u.y(), u.z()}}, layout, caches, ctx.drops, ctx.pattern,
                             ctx.tx_power, ctx.noise_power, ctx.wavelength, ctx.exec);
  };

  const double f0 = objective(u0_vec);
  if (!std::isfinite(f0)) throw NonFiniteObjectiveError("rotation_step: objective not finite");
  const Vec3 grad = fd_gradient_at(objective, u0_vec, f0, cfg.fd_step);

  // Linear constraints on the angle increment du, with the previous
  // rotation factored out: (R(u0) R(du) n_local) . w = (R(du) n_local) . (R(u0)^T w).
  const Mat3 r0t = rotation_matrix(u0).transpose();
  const Vec3& n_local = layout.local_normal;

  LinearProgram3 lp;
  lp.objective = -grad;
  add_box(lp, Vec3::Zero(), Vec3::Constant(cfg.rot_trust));
  for (int j = 0; j < static_cast<int>(poses.size()); ++j) {
    if (j == b) continue;
    const Vec3 v = r0t * (poses[static_cast<std::size_t>(j)].q - q_b);
    lp.constraints.push_back({rotated_normal_dot_coeffs(n_local, v), -n_local.dot(v)});
  }
  const Vec3 w = r0t * q_b;
  lp.constraints.push_back({-rotated_normal_dot_coeffs(n_local, w), n_local.dot(w)});

  require_current_point_feasible(lp, Vec3::Zero(), "rotation_step");
  const Vec3 du = solve_lp3(lp);

  const double gap = grad.dot(du);
  if (gap <= kGapEps) return {false, 0.0, f0};

  const auto rotation_feasible = [&](const EulerAngles& u) {
    const Vec3 n = surface_normal(u, layout);
    if (n.dot(q_b) < -kFeasTol) return false;
    for (int j = 0; j < static_cast<int>(poses.size()); ++j) {
      if (j == b) continue;
      if (n.dot(poses[static_cast<std::size_t>(j)].q - q_b) > kFeasTol) return false;
    }
    return true;
  };

  double tau = cfg.tau_ini;
  for (int k = 0; k <= cfg.max_backtracks; ++k) {
    const Vec3 u_vec = u0_vec + tau * du;
    const EulerAngles u_new{u_vec.x(), u_vec.y(), u_vec.z()};
    const double f_new = objective(u_vec);
    // Sufficient increase and the original (nonlinear) constraints.
    if (f_new - f0 >= cfg.armijo_slope * tau * gap && rotation_feasible(u_new)) {
      poses[static_cast<std::size_t>(b)].u = u_new;
      return {true, tau, f_new};
    }
    tau *= cfg.armijo_shrink;
  }
  return {false, 0.0, f0};
}

namespace {

// Rebuild all per-drop surface blocks at the current poses.
std::vector<std::vector<SurfaceBlock>> build_all_blocks(std::span<const SurfacePose> poses,
                                                        const EvalContext& ctx) {
  const int s = static_cast<int>(ctx.drops.size());
  std::vector<std::vector<SurfaceBlock>> blocks(static_cast<std::size_t>(s));
  if (ctx.exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < s; ++i) {
      blocks[static_cast<std::size_t>(i)] =
          drop_blocks(poses, ctx.layouts, ctx.drops[static_cast<std::size_t>(i)], ctx.pattern,
                      ctx.tx_power, ctx.wavelength);
    }
  } else {
    for (int i = 0; i < s; ++i) {
      blocks[static_cast<std::size_t>(i)] =
          drop_blocks(poses, ctx.layouts, ctx.drops[static_cast<std::size_t>(i)], ctx.pattern,
                      ctx.tx_power, ctx.wavelength);
    }
  }
  return blocks;
}

}  // namespace

OptimizeResult alternating_optimize(std::vector<SurfacePose> initial, const EvalContext& ctx,
                                    const PlacementConstraints& pc, const OptimizerConfig& cfg,
                                    const AlternatingOptions& opts) {
  const int num_surfaces = static_cast<int>(initial.size());
  const int s = static_cast<int>(ctx.drops.size());
  if (num_surfaces == 0) throw std::invalid_argument("alternating_optimize: no surfaces");
  if (s == 0) throw std::invalid_argument("alternating_optimize: no drops");

  OptimizeResult result;
  result.poses = std::move(initial);
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

  using StepFn = StepResult (*)(int, std::vector<SurfacePose>&, std::span<const GramCache>,
                                const EvalContext&, const PlacementConstraints&,
                                const OptimizerConfig&);

  for (int t = 0; t < cfg.outer_iters; ++t) {
    double iter_violation = 0.0;

    const auto run_pass = [&](StepFn step) {
      auto blocks = build_all_blocks(poses, ctx);
      std::vector<GramCache> caches(static_cast<std::size_t>(s));
      for (int i = 0; i < s; ++i) {
        caches[static_cast<std::size_t>(i)] =
            build_gram_excluding(blocks[static_cast<std::size_t>(i)], 0);
      }
      for (int b = 0; b < num_surfaces; ++b) {
        if (b > 0) {
          // Surface b-1 may have moved; refresh its blocks, then slide the
          // exclusion window one surface forward.
          for (int i = 0; i < s; ++i) {
            auto& drop_row = blocks[static_cast<std::size_t>(i)];
            drop_row[static_cast<std::size_t>(b - 1)] =
                surface_block(poses[static_cast<std::size_t>(b - 1)], ctx.layout(b - 1),
                              ctx.drops[static_cast<std::size_t>(i)], ctx.pattern, ctx.tx_power,
                              ctx.wavelength);
            caches[static_cast<std::size_t>(i)] =
                gram_update(caches[static_cast<std::size_t>(i)],
                            drop_row[static_cast<std::size_t>(b - 1)],
                            drop_row[static_cast<std::size_t>(b)]);
          }
        }
        for (int it = 0; it < cfg.inner_iters; ++it) {
          const StepResult res = step(b, poses, caches, ctx, pc, cfg);
          if (res.accepted) {
            trace.accepted_tau.push_back(res.tau);
            iter_violation = std::max(iter_violation, violation_now());
          }
        }
      }
    };

    if (opts.move_positions) run_pass(&position_step);
    if (opts.move_rotations) run_pass(&rotation_step);

    const double obj = full_objective();
    trace.objective.push_back(obj);
    trace.max_violation.push_back(std::max(iter_violation, violation_now()));

    const double prev = trace.objective[trace.objective.size() - 2];
    if (obj - prev < cfg.conv_tol * std::max(std::abs(prev), 1e-12)) break;
  }
  return result;
}

}  // namespace sixdma
