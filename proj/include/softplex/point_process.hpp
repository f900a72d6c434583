// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "softplex/density.hpp"

namespace softplex {

enum class ProcessKind { binomial, poisson };

/// Where a cloud came from: n i.i.d. draws, or a Poisson(lambda) number of draws.
struct Provenance {
  ProcessKind kind = ProcessKind::binomial;
  double parameter = 0.0;  // n or lambda

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Immutable finite point set in R^d, stored row-major.
class PointCloud {
 public:
  PointCloud(std::size_t dimension, std::vector<double> coords, Provenance provenance,
             std::uint64_t seed);

  std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
  bool empty() const noexcept { return coords_.empty(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dimension_, dimension_};
  }
  std::span<const double> coords() const noexcept { return coords_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  std::uint64_t seed() const noexcept { return seed_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dimension_;
  std::vector<double> coords_;
  Provenance provenance_;
  std::uint64_t seed_;
};

/// n i.i.d. draws from `density`.
PointCloud sample_binomial(std::uint64_t n, const Density& density, std::uint64_t seed);

/// N ~ Poisson(lambda) drawn first from the stream, then N i.i.d. draws from `density`.
PointCloud sample_poisson(double lambda, const Density& density, std::uint64_t seed);

}  // namespace softplex
