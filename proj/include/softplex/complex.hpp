// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "softplex/geometry.hpp"

namespace softplex {

enum class Flavor { rips, cech };

/// Per-dimension retention probabilities p_1, p_2, ... (vertices are never thinned).
class RhoVector {
 public:
  RhoVector() = default;
  explicit RhoVector(std::vector<double> probabilities);
  static RhoVector ones(std::size_t length) { return RhoVector(std::vector<double>(length, 1.0)); }

  std::size_t size() const noexcept { return p_.size(); }
  /// p_i for i in 1..size().
  double p(std::size_t i) const;
  std::span<const double> values() const noexcept { return p_; }

  friend bool operator==(const RhoVector&, const RhoVector&) = default;

 private:
  std::vector<double> p_;
};

struct BuildLimits {
  /// Construction stops with RefusalError once this many faces exist.
  std::uint64_t max_faces = 50'000'000;
};

/// Downward-closed set of faces by dimension 0..k_max. Faces are strictly
/// increasing vertex tuples kept in lexicographically sorted per-dimension arrays.
class SimplicialComplex {
 public:
  SimplicialComplex(std::shared_ptr<const PointCloud> cloud, Flavor flavor, double r,
                    std::size_t k_max, std::vector<std::vector<std::uint32_t>> faces,
                    std::optional<RhoVector> rho, std::uint64_t seed);

  const PointCloud& cloud() const noexcept { return *cloud_; }
  std::shared_ptr<const PointCloud> cloud_ptr() const noexcept { return cloud_; }
  Flavor flavor() const noexcept { return flavor_; }
  double r() const noexcept { return r_; }
  std::size_t k_max() const noexcept { return k_max_; }
  const std::optional<RhoVector>& rho() const noexcept { return rho_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::size_t face_count(std::size_t k) const noexcept {
    return k <= k_max_ ? faces_[k].size() / (k + 1) : 0;
  }
  std::span<const std::uint32_t> face(std::size_t k, std::size_t index) const noexcept {
    return {faces_[k].data() + index * (k + 1), k + 1};
  }
  /// All k-faces, flattened with stride k+1.
  std::span<const std::uint32_t> faces(std::size_t k) const noexcept { return faces_[k]; }
  /// Membership by binary search; `face` must be strictly increasing.
  bool contains(std::span<const std::uint32_t> face) const;

 private:
  std::shared_ptr<const PointCloud> cloud_;
  Flavor flavor_;
  double r_;
  std::size_t k_max_;
  std::vector<std::vector<std::uint32_t>> faces_;
  std::optional<RhoVector> rho_;
  std::uint64_t seed_;
};

/// Clique complex of `graph` up to dimension k_max.
SimplicialComplex build_rips(const GeometricGraph& graph, std::size_t k_max,
                             const BuildLimits& limits = {});

/// Čech complex at scale graph.r(): tuples whose smallest enclosing ball has
/// radius <= r/2. Candidates come from the (unthinned) threshold graph.
SimplicialComplex build_cech(const GeometricGraph& graph, std::size_t k_max,
                             const BuildLimits& limits = {});
SimplicialComplex build_cech(std::shared_ptr<const PointCloud> cloud, double r, std::size_t k_max,
                             const BuildLimits& limits = {});

/// Downward-closed soft thinning. A 1-face survives iff its coin is below p_1;
/// a k-face (k >= 2) survives iff all of its (k-1)-faces survived and its coin is
/// below p_k. Coins are face_uniform(seed, k, face), so a face's coin is shared
/// across different rho vectors.
SimplicialComplex soft_thin(const SimplicialComplex& complex, const RhoVector& rho,
                            std::uint64_t seed);

struct FaceCounts {
  std::vector<std::uint64_t> f;  // f[k] for k = 0..k_max
  Region region;
};

/// f[k] = number of k-faces whose leftmost point lies in `region`.
FaceCounts face_counts(const SimplicialComplex& complex, const Region& region = Region::all());

/// f_0 - f_1 + f_2 - ...
std::int64_t euler_characteristic(std::span<const std::uint64_t> f);
inline std::int64_t euler_characteristic(const FaceCounts& counts) {
  return euler_characteristic(counts.f);
}

/// One k-face per row with header v0,...,vk.
void write_faces_csv(std::ostream& out, const SimplicialComplex& complex, std::size_t k);

}  // namespace softplex
