// SPDX-License-Identifier: Apache-2.0
//
// Times the OpenMP-parallel evaluation kernels against their serial
// reference paths on a representative workload and checks that both
// produce bit-identical results.
#include <chrono>
#include <cstdio>
#include <vector>

#include "sixdma/config.hpp"
#include "sixdma/experiment.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-24s %10.3f ms %10.3f ms %7.2fx   %s\n", name, serial_s * 1e3, parallel_s * 1e3,
              serial_s / parallel_s, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  using namespace sixdma;

  ExperimentConfig cfg = default_config();
  cfg.num_drops = 64;

  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  auto t0 = Clock::now();
  const auto drops_serial = monte_carlo_set(cfg.density, cfg.path_loss, cfg.num_drops,
                                            cfg.master_seed, ExecPolicy::serial);
  const double gen_serial = seconds_since(t0);
  t0 = Clock::now();
  const auto drops = monte_carlo_set(cfg.density, cfg.path_loss, cfg.num_drops, cfg.master_seed,
                                     ExecPolicy::parallel);
  const double gen_parallel = seconds_since(t0);
  bool same = drops.size() == drops_serial.size();
  for (std::size_t i = 0; same && i < drops.size(); ++i) {
    same = drops[i].positions == drops_serial[i].positions &&
           drops[i].path_gains == drops_serial[i].path_gains;
  }
  report("monte_carlo_set", gen_serial, gen_parallel, same);

  const auto candidates = fibonacci_candidates(cfg.candidate_count, cfg.init_radius);
  const auto poses = initial_poses(cfg.num_surfaces, candidates, cfg.min_surface_distance,
                                   cfg.master_seed);
  const std::vector<ArrayLayout> layouts = {
      ArrayLayout::uniform_planar(cfg.antennas_per_surface, cfg.antenna_spacing)};

  constexpr int kReps = 5;
  double cap_serial = 0.0, cap_parallel = 0.0;
  t0 = Clock::now();
  for (int r = 0; r < kReps; ++r) {
    cap_serial = avg_capacity(poses, layouts, drops, cfg.pattern, cfg.tx_power, cfg.noise_power,
                              cfg.wavelength, ExecPolicy::serial);
  }
  const double cap_serial_s = seconds_since(t0) / kReps;
  t0 = Clock::now();
  for (int r = 0; r < kReps; ++r) {
    cap_parallel = avg_capacity(poses, layouts, drops, cfg.pattern, cfg.tx_power,
                                cfg.noise_power, cfg.wavelength, ExecPolicy::parallel);
  }
  const double cap_parallel_s = seconds_since(t0) / kReps;
  report("avg_capacity", cap_serial_s, cap_parallel_s, cap_serial == cap_parallel);

  // Per-surface objective, the optimizer's hot path.
  std::vector<GramCache> caches(drops.size());
  for (std::size_t i = 0; i < drops.size(); ++i) {
    const auto blocks =
        drop_blocks(poses, layouts, drops[i], cfg.pattern, cfg.tx_power, cfg.wavelength);
    caches[i] = build_gram_excluding(blocks, 0);
  }
  double po_serial = 0.0, po_parallel = 0.0;
  t0 = Clock::now();
  for (int r = 0; r < kReps; ++r) {
    po_serial = partial_objective(poses[0], layouts[0], caches, drops, cfg.pattern, cfg.tx_power,
                                  cfg.noise_power, cfg.wavelength, ExecPolicy::serial);
  }
  const double po_serial_s = seconds_since(t0) / kReps;
  t0 = Clock::now();
  for (int r = 0; r < kReps; ++r) {
    po_parallel = partial_objective(poses[0], layouts[0], caches, drops, cfg.pattern,
                                    cfg.tx_power, cfg.noise_power, cfg.wavelength,
                                    ExecPolicy::parallel);
  }
  const double po_parallel_s = seconds_since(t0) / kReps;
  report("partial_objective", po_serial_s, po_parallel_s, po_serial == po_parallel);

  // One full outer iteration of the alternating optimizer.
  EvalContext ctx;
  ctx.layouts = layouts;
  ctx.drops = drops;
  ctx.pattern = cfg.pattern;
  ctx.tx_power = cfg.tx_power;
  ctx.noise_power = cfg.noise_power;
  ctx.wavelength = cfg.wavelength;

  OptimizerConfig opt = cfg.optimizer;
  opt.outer_iters = 1;
  opt.inner_iters = 1;
  opt.conv_tol = 0.0;

  ctx.exec = ExecPolicy::serial;
  t0 = Clock::now();
  const auto res_serial = alternating_optimize(poses, ctx, cfg.placement(), opt);
  const double opt_serial_s = seconds_since(t0);
  ctx.exec = ExecPolicy::parallel;
  t0 = Clock::now();
  const auto res_parallel = alternating_optimize(poses, ctx, cfg.placement(), opt);
  const double opt_parallel_s = seconds_since(t0);
  report("alternating (1 iter)", opt_serial_s, opt_parallel_s,
         res_serial.trace.objective == res_parallel.trace.objective);
  return 0;
}
