// SPDX-License-Identifier: Apache-2.0
#include "sixdma/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace sixdma {

namespace {

const ArrayLayout& layout_for(std::span<const ArrayLayout> layouts, std::size_t i) {
  return layouts.size() == 1 ? layouts[0] : layouts[i];
}

// log2 det(I + M / sigma^2) for Hermitian PSD M via Cholesky.
double logdet_capacity(const CMatrix& m, double noise_power) {
  if (m.rows() == 0) return 0.0;
  const CMatrix a =
      CMatrix::Identity(m.rows(), m.cols()) + m / std::complex<double>(noise_power, 0.0);
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailureError("capacity: Cholesky factorization failed");
  }
  const double log_det = 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
  return log_det / std::numbers::ln2;
}

double mean_in_order(const std::vector<double>& terms) {
  double sum = 0.0;
  for (double t : terms) sum += t;
  return terms.empty() ? 0.0 : sum / static_cast<double>(terms.size());
}

}  // namespace

Vec3 pointing_vector(const Vec3& user_pos) {
  const double d = user_pos.norm();
  if (d <= 0.0) throw ZeroPositionError("pointing_vector: user at the array reference");
  return -user_pos / d;
}

CVector steering_vector(const SurfacePose& pose, const ArrayLayout& layout, const Vec3& f,
                        double wavelength) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("steering_vector: wavelength must be > 0");
  const auto positions = antenna_positions(pose, layout);
  const double wavenumber = 2.0 * std::numbers::pi / wavelength;
  CVector a(positions.size());
  for (std::size_t n = 0; n < positions.size(); ++n) {
    const double phase = -wavenumber * f.dot(positions[n]);
    a(static_cast<Eigen::Index>(n)) = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return a;
}

SurfaceBlock surface_block(const SurfacePose& pose, const ArrayLayout& layout,
                           const UserDrop& drop, const RadiationPattern& pat, double tx_power,
                           double wavelength) {
  const int k = drop.user_count();
  const int n = layout.count();
  SurfaceBlock block;
  block.w.resize(k, n);
  for (int i = 0; i < k; ++i) {
    const Vec3 f = pointing_vector(drop.positions[static_cast<std::size_t>(i)]);
    const double gain = effective_gain_linear(local_angles(pose.u, f), pat);
    const double amp =
        std::sqrt(tx_power * drop.path_gains[static_cast<std::size_t>(i)] * gain);
    block.w.row(i) = amp * steering_vector(pose, layout, f, wavelength).adjoint();
  }
  return block;
}

std::vector<SurfaceBlock> drop_blocks(std::span<const SurfacePose> poses,
                                      std::span<const ArrayLayout> layouts, const UserDrop& drop,
                                      const RadiationPattern& pat, double tx_power,
                                      double wavelength) {
  std::vector<SurfaceBlock> blocks;
  blocks.reserve(poses.size());
  for (std::size_t b = 0; b < poses.size(); ++b) {
    blocks.push_back(surface_block(poses[b], layout_for(layouts, b), drop, pat, tx_power,
                                   wavelength));
  }
  return blocks;
}

double sum_rate(std::span<const SurfaceBlock> blocks, double noise_power) {
  if (!(noise_power > 0.0)) throw std::invalid_argument("sum_rate: noise power must be > 0");
  if (blocks.empty()) return 0.0;
  const int k = blocks[0].users();
  if (k == 0) return 0.0;

  int antennas = 0;
  for (const auto& b : blocks) antennas += static_cast<int>(b.w.cols());

  if (k <= antennas) {
    CMatrix gram = CMatrix::Zero(k, k);
    for (const auto& b : blocks) gram.noalias() += b.w * b.w.adjoint();
    return logdet_capacity(gram, noise_power);
  }
  // Fewer antennas than users: evaluate the other side of the identity.
  CMatrix stacked(k, antennas);
  int col = 0;
  for (const auto& b : blocks) {
    stacked.middleCols(col, b.w.cols()) = b.w;
    col += static_cast<int>(b.w.cols());
  }
  const CMatrix gram = stacked.adjoint() * stacked;
  return logdet_capacity(gram, noise_power);
}

GramCache build_gram_excluding(std::span<const SurfaceBlock> blocks, int b) {
  const int k = blocks.empty() ? 0 : blocks[0].users();
  GramCache cache;
  cache.excluded = b;
  cache.g_excl = CMatrix::Zero(k, k);
  for (int j = 0; j < static_cast<int>(blocks.size()); ++j) {
    if (j == b) continue;
    cache.g_excl.noalias() +=
        blocks[static_cast<std::size_t>(j)].w * blocks[static_cast<std::size_t>(j)].w.adjoint();
  }
  return cache;
}

GramCache gram_update(const GramCache& cache, const SurfaceBlock& block_prev,
                      const SurfaceBlock& block_next) {
  const int k = static_cast<int>(cache.g_excl.rows());
  const int n_prev = static_cast<int>(block_prev.w.cols());
  const int n_next = static_cast<int>(block_next.w.cols());

  CMatrix ma(k, n_prev + n_next);
  CMatrix mb(k, n_prev + n_next);
  ma.leftCols(n_prev) = block_prev.w;
  ma.rightCols(n_next) = block_next.w;
  mb.leftCols(n_prev) = block_prev.w;
  mb.rightCols(n_next) = -block_next.w;

  GramCache out;
  out.excluded = cache.excluded + 1;
  out.g_excl = cache.g_excl + ma * mb.adjoint();
  // Rank-2N updates leave a skew round-off residue; re-Hermitize it away.
  out.g_excl = (0.5 * (out.g_excl + out.g_excl.adjoint())).eval();
  return out;
}

double partial_rate(const SurfacePose& trial, const ArrayLayout& layout, const GramCache& cache,
                    const UserDrop& drop, const RadiationPattern& pat, double tx_power,
                    double noise_power, double wavelength) {
  if (drop.user_count() == 0) return 0.0;
  const SurfaceBlock block = surface_block(trial, layout, drop, pat, tx_power, wavelength);
  CMatrix m = cache.g_excl;
  m.noalias() += block.w * block.w.adjoint();
  return logdet_capacity(m, noise_power);
}

double partial_objective(const SurfacePose& trial, const ArrayLayout& layout,
                         std::span<const GramCache> caches, std::span<const UserDrop> drops,
                         const RadiationPattern& pat, double tx_power, double noise_power,
                         double wavelength, ExecPolicy exec) {
  const int s = static_cast<int>(drops.size());
  std::vector<double> terms(static_cast<std::size_t>(s), 0.0);
  if (exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < s; ++i) {
      terms[static_cast<std::size_t>(i)] =
          partial_rate(trial, layout, caches[static_cast<std::size_t>(i)],
                       drops[static_cast<std::size_t>(i)], pat, tx_power, noise_power,
                       wavelength);
    }
  } else {
    for (int i = 0; i < s; ++i) {
      terms[static_cast<std::size_t>(i)] =
          partial_rate(trial, layout, caches[static_cast<std::size_t>(i)],
                       drops[static_cast<std::size_t>(i)], pat, tx_power, noise_power,
                       wavelength);
    }
  }
  return mean_in_order(terms);
}

std::vector<double> per_drop_sum_rates(std::span<const SurfacePose> poses,
                                       std::span<const ArrayLayout> layouts,
                                       std::span<const UserDrop> drops,
                                       const RadiationPattern& pat, double tx_power,
                                       double noise_power, double wavelength, ExecPolicy exec) {
  const int s = static_cast<int>(drops.size());
  std::vector<double> rates(static_cast<std::size_t>(s), 0.0);
  if (exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < s; ++i) {
      const auto blocks =
          drop_blocks(poses, layouts, drops[static_cast<std::size_t>(i)], pat, tx_power,
                      wavelength);
      rates[static_cast<std::size_t>(i)] = sum_rate(blocks, noise_power);
    }
  } else {
    for (int i = 0; i < s; ++i) {
      const auto blocks =
          drop_blocks(poses, layouts, drops[static_cast<std::size_t>(i)], pat, tx_power,
                      wavelength);
      rates[static_cast<std::size_t>(i)] = sum_rate(blocks, noise_power);
    }
  }
  return rates;
}

double avg_capacity(std::span<const SurfacePose> poses, std::span<const ArrayLayout> layouts,
                    std::span<const UserDrop> drops, const RadiationPattern& pat, double tx_power,
                    double noise_power, double wavelength, ExecPolicy exec) {
  if (drops.empty()) throw std::invalid_argument("avg_capacity: needs at least one drop");
  return mean_in_order(
      per_drop_sum_rates(poses, layouts, drops, pat, tx_power, noise_power, wavelength, exec));
}

}  // namespace sixdma
