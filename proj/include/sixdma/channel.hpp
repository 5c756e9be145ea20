// SPDX-License-Identifier: Apache-2.0
//
// Uplink LoS channel assembly and capacity evaluation. Each surface
// contributes a K x N block whose row k is
//   sqrt(p * nu_k * g_k(u)) * a_k(q, u)^H,
// and the sum rate is log2 det(I + sigma^-2 * sum_b W_b W_b^H), evaluated
// on whichever side of the determinant identity is smaller. Per-surface
// optimization works against a cached K x K Gram of all other surfaces'
// blocks, advanced between consecutive surfaces by a rank-2N update.
#pragma once

#include <span>
#include <vector>

#include "sixdma/geometry.hpp"
#include "sixdma/propagation.hpp"
#include "sixdma/scenario.hpp"
#include "sixdma/types.hpp"

namespace sixdma {

// Transmit-power-scaled channel block of one surface for one drop (K x N).
struct SurfaceBlock {
  CMatrix w;

  int users() const { return static_cast<int>(w.rows()); }
};

// Hermitian PSD Gram of every surface block except `excluded` (K x K).
struct GramCache {
  CMatrix g_excl;
  int excluded = 0;
};

// Unit propagation vector of the signal from a user at `user_pos`
// (points from the user toward the array reference). Throws
// ZeroPositionError at the origin.
Vec3 pointing_vector(const Vec3& user_pos);

// Per-antenna phases exp(-j * 2pi/lambda * f . r_n); unit modulus.
CVector steering_vector(const SurfacePose& pose, const ArrayLayout& layout, const Vec3& f,
                        double wavelength);

// K x N block for one surface over one drop.
SurfaceBlock surface_block(const SurfacePose& pose, const ArrayLayout& layout,
                           const UserDrop& drop, const RadiationPattern& pat, double tx_power,
                           double wavelength);

// Blocks of every surface for one drop.
std::vector<SurfaceBlock> drop_blocks(std::span<const SurfacePose> poses,
                                      std::span<const ArrayLayout> layouts, const UserDrop& drop,
                                      const RadiationPattern& pat, double tx_power,
                                      double wavelength);

// Sum rate in bps/Hz for one drop; 0 when the drop is empty. Throws
// NumericalFailureError if the Hermitian factorization fails.
double sum_rate(std::span<const SurfaceBlock> blocks, double noise_power);

// Direct K x K Gram of all blocks except index b.
GramCache build_gram_excluding(std::span<const SurfaceBlock> blocks, int b);

// Advance the exclusion from surface `cache.excluded` to the next one:
// add back block_prev (the surface just finished, at its accepted pose)
// and remove block_next, as a single rank-2N product.
GramCache gram_update(const GramCache& cache, const SurfaceBlock& block_prev,
                      const SurfaceBlock& block_next);

// log2 det(I + (g_excl + W W^H) / sigma^2) for one drop and a trial pose.
double partial_rate(const SurfacePose& trial, const ArrayLayout& layout, const GramCache& cache,
                    const UserDrop& drop, const RadiationPattern& pat, double tx_power,
                    double noise_power, double wavelength);

// Mean of partial_rate over the drops (fixed-order reduction).
double partial_objective(const SurfacePose& trial, const ArrayLayout& layout,
                         std::span<const GramCache> caches, std::span<const UserDrop> drops,
                         const RadiationPattern& pat, double tx_power, double noise_power,
                         double wavelength, ExecPolicy exec = ExecPolicy::parallel);

// Per-drop sum rates for a full pose set.
std::vector<double> per_drop_sum_rates(std::span<const SurfacePose> poses,
                                       std::span<const ArrayLayout> layouts,
                                       std::span<const UserDrop> drops,
                                       const RadiationPattern& pat, double tx_power,
                                       double noise_power, double wavelength,
                                       ExecPolicy exec = ExecPolicy::parallel);

// Monte Carlo average network capacity (mean of per_drop_sum_rates).
double avg_capacity(std::span<const SurfacePose> poses, std::span<const ArrayLayout> layouts,
                    std::span<const UserDrop> drops, const RadiationPattern& pat, double tx_power,
                    double noise_power, double wavelength,
                    ExecPolicy exec = ExecPolicy::parallel);

}  // namespace sixdma
