// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sixdma {

// Deterministic random source. mt19937_64 is fully specified by the
// standard and the variate transforms below avoid the
// implementation-defined std::*_distribution classes, so identical seeds
// give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Poisson variate by multiplicative inversion. Split into chunks of
  // mean <= 30 (a Poisson sum is Poisson) so exp(-mu) never underflows.
  int poisson(double mu) {
    int total = 0;
    while (mu > 30.0) {
      total += poisson_small(30.0);
      mu -= 30.0;
    }
    return total + poisson_small(mu);
  }

  // Decorrelated stream seed for substream `stream` (splitmix64 finalizer).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  int poisson_small(double mu) {
    const double limit = std::exp(-mu);
    double prod = 1.0;
    int k = 0;
    do {
      ++k;
      prod *= uniform();
    } while (prod > limit);
    return k - 1;
  }

  std::mt19937_64 gen_;
};

}  // namespace sixdma
