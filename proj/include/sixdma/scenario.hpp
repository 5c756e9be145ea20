// SPDX-License-Identifier: Apache-2.0
//
// Non-homogeneous Poisson user drops: a uniform background density over a
// spherical annulus plus constant excess densities inside disjoint hotspot
// balls. Drop generation is seeded per drop index, so a Monte Carlo set is
// reproducible independently of evaluation order.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sixdma/propagation.hpp"
#include "sixdma/rng.hpp"
#include "sixdma/types.hpp"

namespace sixdma {

struct HotspotSpec {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
  double weight = 1.0;  // relative expected excess user count

  double volume() const;
};

struct CoverageRegion {
  double r_min = 20.0;
  double r_max = 200.0;
  std::vector<HotspotSpec> hotspots;

  double volume() const;  // full annulus
  // Throws ConfigValidationError on bad radii, hotspot overlap, or a
  // hotspot leaving the annulus.
  void validate() const;
};

struct DensityModel {
  double mu = 35.0;  // expected user count
  double xi = 0.2;   // share of mu attributed to the uniform background
  CoverageRegion region;

  // xi as used by the sampler; forced to 1 when there are no hotspots so
  // the whole expectation stays attached to the background.
  double effective_xi() const { return region.hotspots.empty() ? 1.0 : xi; }
  double background_density() const;  // users / m^3 over the annulus
  // Expected excess count per hotspot: (1 - xi) * mu split by weight.
  std::vector<double> hotspot_excess_counts() const;
};

struct UserDrop {
  std::vector<Vec3> positions;
  std::vector<double> path_gains;

  int user_count() const { return static_cast<int>(positions.size()); }
};

// Total expected user count implied by the densities; equals dm.mu.
double mean_user_count(const DensityModel& dm);

// Poisson(mu) sample.
int sample_user_count(const DensityModel& dm, Rng& rng);

// One realization: Poisson count, then each user assigned to the
// background (uniform over the annulus) or a hotspot (uniform over the
// ball) with probability proportional to that component's expected count.
UserDrop sample_drop(const DensityModel& dm, const PathLossModel& plm, Rng& rng);

// s independent drops; drop i is generated from Rng(Rng::derive(seed, i)).
std::vector<UserDrop> monte_carlo_set(const DensityModel& dm, const PathLossModel& plm, int s,
                                      std::uint64_t seed, ExecPolicy exec = ExecPolicy::parallel);

}  // namespace sixdma
