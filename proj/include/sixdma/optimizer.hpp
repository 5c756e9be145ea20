// SPDX-License-Identifier: Apache-2.0
//
// Alternating conditional-gradient (Frank-Wolfe) optimization of surface
// positions and rotations. Each step linearizes the Monte Carlo capacity
// objective with forward differences, solves a small LP over the
// linearized feasible set, and backtracks the step size with an Armijo
// sufficient-increase rule; rotation steps additionally re-check the
// original nonlinear rotation constraints before accepting.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sixdma/channel.hpp"
#include "sixdma/geometry.hpp"
#include "sixdma/types.hpp"

namespace sixdma {

struct OptimizerConfig {
  int outer_iters = 30;          // alternating passes over all surfaces
  int inner_iters = 2;           // conditional-gradient steps per surface
  double tau_ini = 1.0;          // initial step size, in (0, 1]
  double armijo_slope = 1e-2;    // sufficient-increase factor
  double armijo_shrink = 0.5;    // backtracking factor
  double fd_step = 1e-6;         // forward-difference step (m or rad)
  double rot_trust = 0.19634954084936207;  // pi/16 box on rotation increments
  int max_backtracks = 30;
  double conv_tol = 1e-4;        // relative per-outer-iteration gain cutoff
  // The alternating ascent is local; the experiment runner draws this many
  // independent starts from the candidate set and keeps the best final
  // objective. Benchmarks with deterministic starts ignore it.
  int restarts = 3;
  std::uint64_t seed = 1;
};

// minimize objective . x subject to a_i . x <= b_i. The caller must make
// the feasible region bounded (the position/rotation steps always include
// a box).
struct LinearProgram3 {
  struct Halfspace {
    Vec3 a = Vec3::Zero();
    double b = 0.0;
  };

  Vec3 objective = Vec3::Zero();
  std::vector<Halfspace> constraints;
};

// Dense two-phase simplex (Bland's rule, deterministic). Throws
// LpInfeasibleError / LpUnboundedError.
Vec3 solve_lp3(const LinearProgram3& lp);

// Forward-difference gradient, component j = (f(x + eps e_j) - f(x)) / eps.
// Throws NonFiniteObjectiveError if any evaluation is non-finite.
Vec3 fd_gradient(const std::function<double(const Vec3&)>& objective, const Vec3& x0, double eps);

// Read-only evaluation environment shared by every step.
struct EvalContext {
  std::span<const ArrayLayout> layouts;  // one per surface, or one shared
  std::span<const UserDrop> drops;
  RadiationPattern pattern;
  double tx_power = 0.04;
  double noise_power = 1e-8;
  double wavelength = 0.125;
  ExecPolicy exec = ExecPolicy::parallel;

  const ArrayLayout& layout(int b) const {
    return layouts.size() == 1 ? layouts[0] : layouts[static_cast<std::size_t>(b)];
  }
};

struct StepResult {
  bool accepted = false;
  double tau = 0.0;
  double objective = 0.0;  // objective after the step (accepted or not)
};

struct ConvergenceTrace {
  std::vector<double> objective;      // index 0 holds the initial value
  std::vector<double> max_violation;  // worst violation seen per iteration
  std::vector<double> accepted_tau;

  // CSV columns: outer_iter, objective_bps_hz, max_violation.
  void write_csv(const std::string& path) const;
};

struct OptimizeResult {
  std::vector<SurfacePose> poses;
  ConvergenceTrace trace;
};

// One conditional-gradient step on the position of surface b. `caches`
// hold, per drop, the Gram of every other surface's block; they are not
// invalidated by the move. Leaves q_b unchanged when no ascent direction
// exists or backtracking exhausts.
StepResult position_step(int b, std::vector<SurfacePose>& poses, std::span<const GramCache> caches,
                         const EvalContext& ctx, const PlacementConstraints& pc,
                         const OptimizerConfig& cfg);

// One conditional-gradient step on the rotation of surface b, over the
// small-angle increment with a trust box; acceptance requires sufficient
// increase and feasibility of the original rotation constraints.
StepResult rotation_step(int b, std::vector<SurfacePose>& poses, std::span<const GramCache> caches,
                         const EvalContext& ctx, const PlacementConstraints& pc,
                         const OptimizerConfig& cfg);

struct AlternatingOptions {
  bool move_positions = true;
  bool move_rotations = true;
};

// Full alternating loop: per outer iteration, a position pass over all
// surfaces then a rotation pass, with Gram caches rebuilt at the start of
// each pass and advanced between consecutive surfaces. Stops early when
// the relative objective gain of an outer iteration falls below conv_tol.
OptimizeResult alternating_optimize(std::vector<SurfacePose> initial, const EvalContext& ctx,
                                    const PlacementConstraints& pc, const OptimizerConfig& cfg,
                                    const AlternatingOptions& opts = {});

}  // namespace sixdma
