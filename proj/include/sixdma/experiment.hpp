// SPDX-License-Identifier: Apache-2.0
//
// Seeded end-to-end experiment runner: regenerates user drops per sweep
// point, runs each requested scheme on the same drops, and emits result
// rows, per-run convergence traces, and final pose dumps.
#pragma once

#include <string>
#include <vector>

#include "sixdma/benchmarks.hpp"
#include "sixdma/config.hpp"

namespace sixdma {

struct ResultRow {
  double sweep_value = 0.0;  // 0 when no sweep axis is active
  std::string scheme;
  double capacity = 0.0;   // bps/Hz, mean over drops
  double std_error = 0.0;  // std deviation of per-drop rates / sqrt(S)
  double seconds = 0.0;    // wall time; 0 when timing is suppressed
};

// Everything produced by one (sweep value, scheme) run.
struct SchemeRun {
  std::string scheme;
  double sweep_value = 0.0;
  std::vector<SurfacePose> poses;
  std::vector<ArrayLayout> layouts;
  ConvergenceTrace trace;
};

struct RunArtifacts {
  std::vector<ResultRow> rows;
  std::vector<SchemeRun> runs;
};

// Run the full experiment plan. Drops for sweep point i are seeded with
// master_seed + i and shared by every scheme at that point.
RunArtifacts run_experiment(const ExperimentConfig& cfg,
                            ExecPolicy exec = ExecPolicy::parallel);

// Write results.csv plus one trace_<scheme>_<sweep>.csv and one
// poses_<scheme>_<sweep>.json per run into `dir` (created if missing).
// All numeric output carries 9 significant digits.
void emit_outputs(const RunArtifacts& artifacts, const std::string& dir);

// results.csv serialization of the rows alone (header always present).
std::string results_csv(const std::vector<ResultRow>& rows);

}  // namespace sixdma
