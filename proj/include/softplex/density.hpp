// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "softplex/rng.hpp"

namespace softplex {

enum class DensityKind { uniform_box, gaussian_isotropic, piecewise_constant };

/// A bounded probability density on R^d.
///
/// Three families are supported: the uniform density on an axis-aligned box,
/// the isotropic Gaussian, and a piecewise-constant density on a regular grid
/// of cells covering a box. Piecewise-constant weights are given per cell in
/// row-major order (dimension 0 slowest) and are rescaled so that the density
/// integrates to one.
class Density {
 public:
  static Density uniform_box(std::vector<double> lo, std::vector<double> hi);
  /// Uniform on [0,1]^d.
  static Density unit_cube(std::size_t d);
  static Density gaussian(std::vector<double> mean, double sigma);
  static Density piecewise_constant(std::vector<double> lo, std::vector<double> hi,
                                    std::vector<std::size_t> cells_per_dim,
                                    std::vector<double> weights);

  DensityKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return lo_.size(); }

  /// Pointwise value. Throws InputError when x has the wrong dimension.
  double operator()(std::span<const double> x) const;
  /// ||f||_inf
  double sup_norm() const noexcept { return sup_norm_; }

  /// Writes one draw from the density into `out` (size d).
  void sample(Rng& rng, std::span<double> out) const;

  // Kind-specific parameters; `lo`/`hi` double as the mean for the Gaussian.
  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }
  const std::vector<double>& mean() const noexcept { return lo_; }
  double sigma() const noexcept { return sigma_; }
  const std::vector<std::size_t>& cells_per_dim() const noexcept { return cells_; }
  /// Normalized cell densities (piecewise-constant only).
  const std::vector<double>& cell_values() const noexcept { return values_; }

 private:
  Density() = default;
  std::size_t cell_of(std::span<const double> x) const;

  DensityKind kind_ = DensityKind::uniform_box;
  std::vector<double> lo_;
  std::vector<double> hi_;
  double sigma_ = 0.0;
  double sup_norm_ = 0.0;
  double box_volume_ = 0.0;
  std::vector<std::size_t> cells_;
  std::vector<double> values_;
  std::vector<double> cell_cdf_;
};

}  // namespace softplex
