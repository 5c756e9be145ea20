// SPDX-License-Identifier: Apache-2.0
#include "sixdma/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sixdma {

namespace {

constexpr double kFourThirdsPi = 4.0 / 3.0 * std::numbers::pi;

// Uniform point in the annulus [r_min, r_max]: inverse CDF on r^3 plus an
// isotropic direction.
Vec3 sample_annulus(double r_min, double r_max, Rng& rng) {
  const double r3 = r_min * r_min * r_min +
                    (r_max * r_max * r_max - r_min * r_min * r_min) * rng.uniform();
  const double r = std::cbrt(r3);
  const double z = rng.uniform(-1.0, 1.0);
  const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return r * Vec3(s * std::cos(az), s * std::sin(az), z);
}

// Uniform point in a ball: cube-root radius plus an isotropic direction.
Vec3 sample_ball(const Vec3& center, double radius, Rng& rng) {
  const double r = radius * std::cbrt(rng.uniform());
  const double z = rng.uniform(-1.0, 1.0);
  const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return center + r * Vec3(s * std::cos(az), s * std::sin(az), z);
}

}  // namespace

double HotspotSpec::volume() const { return kFourThirdsPi * radius * radius * radius; }

double CoverageRegion::volume() const {
  return kFourThirdsPi * (r_max * r_max * r_max - r_min * r_min * r_min);
}

void CoverageRegion::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min)) {
    throw ConfigValidationError("coverage region requires 0 < r_min < r_max");
  }
  for (std::size_t w = 0; w < hotspots.size(); ++w) {
    const auto& h = hotspots[w];
    if (!(h.radius > 0.0)) {
      throw ConfigValidationError("hotspot " + std::to_string(w) + " radius must be > 0");
    }
    if (!(h.weight > 0.0)) {
      throw ConfigValidationError("hotspot " + std::to_string(w) + " weight must be > 0");
    }
    const double d = h.center.norm();
    if (d - h.radius < r_min || d + h.radius > r_max) {
      throw ConfigValidationError("hotspot " + std::to_string(w) +
                                  " is not contained in the coverage annulus");
    }
    for (std::size_t v = w + 1; v < hotspots.size(); ++v) {
      const auto& g = hotspots[v];
      if ((h.center - g.center).norm() < h.radius + g.radius) {
        throw ConfigValidationError("hotspots " + std::to_string(w) + " and " +
                                    std::to_string(v) + " overlap");
      }
    }
  }
}

double DensityModel::background_density() const {
  return effective_xi() * mu / region.volume();
}

std::vector<double> DensityModel::hotspot_excess_counts() const {
  double weight_sum = 0.0;
  for (const auto& h : region.hotspots) weight_sum += h.weight;
  std::vector<double> out;
  out.reserve(region.hotspots.size());
  for (const auto& h : region.hotspots) {
    out.push_back(weight_sum > 0.0 ? (1.0 - effective_xi()) * mu * h.weight / weight_sum : 0.0);
  }
  return out;
}

double mean_user_count(const DensityModel& dm) {
  double total = dm.background_density() * dm.region.volume();
  const auto excess = dm.hotspot_excess_counts();
  for (double e : excess) total += e;
  return total;
}

int sample_user_count(const DensityModel& dm, Rng& rng) { return rng.poisson(dm.mu); }

UserDrop sample_drop(const DensityModel& dm, const PathLossModel& plm, Rng& rng) {
  const auto excess = dm.hotspot_excess_counts();
  const int k = sample_user_count(dm, rng);

  UserDrop drop;
  drop.positions.reserve(static_cast<std::size_t>(k));
  drop.path_gains.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    // Component choice by expected count: background first, hotspots after.
    double pick = rng.uniform() * dm.mu;
    Vec3 pos;
    pick -= dm.effective_xi() * dm.mu;
    if (pick < 0.0 || excess.empty()) {
      pos = sample_annulus(dm.region.r_min, dm.region.r_max, rng);
    } else {
      std::size_t w = 0;
      while (w + 1 < excess.size() && pick >= excess[w]) pick -= excess[w++];
      pos = sample_ball(dm.region.hotspots[w].center, dm.region.hotspots[w].radius, rng);
    }
    drop.positions.push_back(pos);
    drop.path_gains.push_back(path_gain(pos, plm));
  }
  return drop;
}

std::vector<UserDrop> monte_carlo_set(const DensityModel& dm, const PathLossModel& plm, int s,
                                      std::uint64_t seed, ExecPolicy exec) {
  if (s < 1) throw std::invalid_argument("monte_carlo_set: s must be >= 1");
  std::vector<UserDrop> drops(static_cast<std::size_t>(s));
  if (exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < s; ++i) {
      Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
      drops[static_cast<std::size_t>(i)] = sample_drop(dm, plm, rng);
    }
  } else {
    for (int i = 0; i < s; ++i) {
      Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
      drops[static_cast<std::size_t>(i)] = sample_drop(dm, plm, rng);
    }
  }
  return drops;
}

}  // namespace sixdma
