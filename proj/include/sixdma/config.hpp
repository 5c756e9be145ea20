// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: a flat-sectioned JSON file whose defaults
// describe the reference setup (16 surfaces of 4 antennas inside a 1 m
// cube, 35 expected users over a 20-200 m annulus with three hotspots,
// 100 Monte Carlo drops). Unknown keys are rejected.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sixdma/optimizer.hpp"
#include "sixdma/scenario.hpp"

namespace sixdma {

struct ExperimentConfig {
  // array
  int num_surfaces = 16;
  int antennas_per_surface = 4;
  double wavelength = 0.125;
  double antenna_spacing = 0.0625;
  double min_surface_distance = 0.15088834764831843;
  SiteBox site;

  // scenario
  DensityModel density;

  // signal
  double tx_power = 0.04;     // watts
  double noise_power = 1e-8;  // watts
  RadiationPattern pattern;
  PathLossModel path_loss;

  // monte carlo
  int num_drops = 100;
  std::uint64_t master_seed = 1;

  // initialization
  int candidate_count = 64;
  double init_radius = 0.5;  // candidate sphere radius; <= site inscribed radius

  OptimizerConfig optimizer;

  // run plan
  std::vector<std::string> schemes = {"proposed"};
  std::string sweep = "none";  // none | users | xi | power
  std::vector<double> sweep_values;
  std::string output_dir = "out";
  bool emit_timing = true;

  PlacementConstraints placement() const { return {min_surface_distance, site}; }
};

// Build the default configuration (hotspots at 40/60/100 m with radii
// 5/10/15 m and excess-count weights 1:2:3).
ExperimentConfig default_config();

// Parse and validate configuration text; empty text means all defaults.
// Throws ConfigParseError on malformed JSON and ConfigValidationError on
// unknown keys or violated invariants.
ExperimentConfig parse_config(const std::string& text);

// Read, parse, and validate a configuration file.
ExperimentConfig load_config(const std::string& path);

}  // namespace sixdma
