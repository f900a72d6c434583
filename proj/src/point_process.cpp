// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/point_process.hpp"

#include <cmath>
#include <limits>

#include "softplex/error.hpp"

namespace softplex {

namespace {

std::vector<double> draw(Rng& rng, std::uint64_t count, const Density& density) {
  const std::size_t d = density.dimension();
  if (count > std::numeric_limits<std::uint32_t>::max()) {
    throw RefusalError("point count exceeds the 32-bit vertex index range");
  }
  std::vector<double> coords(static_cast<std::size_t>(count) * d);
  for (std::size_t i = 0; i < count; ++i) {
    density.sample(rng, std::span<double>(coords.data() + i * d, d));
  }
  return coords;
}

}  // namespace

PointCloud::PointCloud(std::size_t dimension, std::vector<double> coords, Provenance provenance,
                       std::uint64_t seed)
    : dimension_(dimension), coords_(std::move(coords)), provenance_(provenance), seed_(seed) {
  if (dimension_ == 0) throw InputError("point cloud dimension must be positive");
  if (coords_.size() % dimension_ != 0) {
    throw InputError("coordinate count is not a multiple of the dimension");
  }
}

PointCloud sample_binomial(std::uint64_t n, const Density& density, std::uint64_t seed) {
  if (n == 0) throw InputError("binomial process needs n >= 1");
  Rng rng(seed);
  return PointCloud(density.dimension(), draw(rng, n, density),
                    {ProcessKind::binomial, static_cast<double>(n)}, seed);
}

PointCloud sample_poisson(double lambda, const Density& density, std::uint64_t seed) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("Poisson intensity must be positive and finite");
  }
  Rng rng(seed);
  const std::uint64_t count = rng.poisson(lambda);
  return PointCloud(density.dimension(), draw(rng, count, density),
                    {ProcessKind::poisson, lambda}, seed);
}

}  // namespace softplex
