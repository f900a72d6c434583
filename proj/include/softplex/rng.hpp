// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace softplex {

/// splitmix64 finalizer; a bijection on 64-bit words with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`. Distinct indices give unrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index ^ 0xd1b54a32d192ed03ULL));
}

/// Counter-based uniform in [0,1) keyed by (seed, dimension, vertex tuple).
/// Used for face-retention coins so the draw for a face does not depend on
/// enumeration order.
double face_uniform(std::uint64_t seed, std::uint32_t dimension,
                    std::span<const std::uint32_t> vertices) noexcept;

/// Sequential stream over std::mt19937_64 with portable variate conversions
/// (std distributions are not bit-identical across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Uniform on (0,1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal();
  /// Poisson(lambda): inversion below 30, Hörmann's PTRS rejection above.
  std::uint64_t poisson(double lambda);
  /// Uniform integer in [0, bound) by rejection, bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace softplex
