// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "softplex/error.hpp"

namespace softplex {

namespace {

void check_box(const std::vector<double>& lo, const std::vector<double>& hi) {
  if (lo.empty()) throw ConfigError("density dimension must be positive");
  if (lo.size() != hi.size()) throw ConfigError("density box: lo and hi differ in dimension");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] < hi[i])) {
      throw ConfigError("density box: need finite lo < hi in every coordinate");
    }
  }
}

double box_volume(const std::vector<double>& lo, const std::vector<double>& hi) {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

}  // namespace

Density Density::uniform_box(std::vector<double> lo, std::vector<double> hi) {
  check_box(lo, hi);
  Density f;
  f.kind_ = DensityKind::uniform_box;
  f.box_volume_ = box_volume(lo, hi);
  f.sup_norm_ = 1.0 / f.box_volume_;
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  return f;
}

Density Density::unit_cube(std::size_t d) {
  return uniform_box(std::vector<double>(d, 0.0), std::vector<double>(d, 1.0));
}

Density Density::gaussian(std::vector<double> mean, double sigma) {
  if (mean.empty()) throw ConfigError("density dimension must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("gaussian sigma must be positive");
  Density f;
  f.kind_ = DensityKind::gaussian_isotropic;
  f.sigma_ = sigma;
  const double d = static_cast<double>(mean.size());
  f.sup_norm_ = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.5 * d);
  f.hi_ = mean;
  f.lo_ = std::move(mean);
  return f;
}

Density Density::piecewise_constant(std::vector<double> lo, std::vector<double> hi,
                                    std::vector<std::size_t> cells_per_dim,
                                    std::vector<double> weights) {
  check_box(lo, hi);
  if (cells_per_dim.size() != lo.size()) {
    throw ConfigError("piecewise-constant density: shape has wrong dimension");
  }
  std::size_t total = 1;
  for (std::size_t c : cells_per_dim) {
    if (c == 0) throw ConfigError("piecewise-constant density: zero cells along a dimension");
    total *= c;
  }
  if (weights.size() != total) {
    throw ConfigError("piecewise-constant density: expected " + std::to_string(total) +
                      " weights, got " + std::to_string(weights.size()));
  }
  double cell_volume = box_volume(lo, hi) / static_cast<double>(total);
  double mass = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ConfigError("piecewise-constant density: weights must be finite and nonnegative");
    }
    mass += w * cell_volume;
  }
  if (!(mass > 0.0)) throw ConfigError("piecewise-constant density: all weights are zero");

  Density f;
  f.kind_ = DensityKind::piecewise_constant;
  f.box_volume_ = box_volume(lo, hi);
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  f.cells_ = std::move(cells_per_dim);
  f.values_.resize(total);
  f.cell_cdf_.resize(total);
  double running = 0.0;
  for (std::size_t c = 0; c < total; ++c) {
    f.values_[c] = weights[c] / mass;
    running += f.values_[c] * cell_volume;
    f.cell_cdf_[c] = running;
  }
  f.cell_cdf_.back() = 1.0;
  f.sup_norm_ = *std::max_element(f.values_.begin(), f.values_.end());
  return f;
}

std::size_t Density::cell_of(std::span<const double> x) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = (x[i] - lo_[i]) / (hi_[i] - lo_[i]);
    auto c = static_cast<std::size_t>(std::floor(t * static_cast<double>(cells_[i])));
    c = std::min(c, cells_[i] - 1);  // x == hi belongs to the last cell
    index = index * cells_[i] + c;
  }
  return index;
}

double Density::operator()(std::span<const double> x) const {
  if (x.size() != dimension()) {
    throw InputError("density evaluated at a point of dimension " + std::to_string(x.size()) +
                     ", expected " + std::to_string(dimension()));
  }
  switch (kind_) {
    case DensityKind::uniform_box:
    case DensityKind::piecewise_constant:
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lo_[i] && x[i] <= hi_[i])) return 0.0;
      }
      return kind_ == DensityKind::uniform_box ? sup_norm_ : values_[cell_of(x)];
    case DensityKind::gaussian_isotropic: {
      double r2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double z = (x[i] - lo_[i]) / sigma_;
        r2 += z * z;
      }
      return sup_norm_ * std::exp(-0.5 * r2);
    }
  }
  return 0.0;
}

void Density::sample(Rng& rng, std::span<double> out) const {
  const std::size_t d = dimension();
  switch (kind_) {
    case DensityKind::uniform_box:
      for (std::size_t i = 0; i < d; ++i) out[i] = rng.uniform(lo_[i], hi_[i]);
      return;
    case DensityKind::gaussian_isotropic:
      for (std::size_t i = 0; i < d; ++i) out[i] = lo_[i] + sigma_ * rng.normal();
      return;
    case DensityKind::piecewise_constant: {
      const double u = rng.uniform();
      auto it = std::upper_bound(cell_cdf_.begin(), cell_cdf_.end(), u);
      std::size_t cell = static_cast<std::size_t>(it - cell_cdf_.begin());
      cell = std::min(cell, cell_cdf_.size() - 1);
      // Decode row-major cell index, last dimension fastest.
      for (std::size_t i = d; i-- > 0;) {
        const std::size_t c = cell % cells_[i];
        cell /= cells_[i];
        const double width = (hi_[i] - lo_[i]) / static_cast<double>(cells_[i]);
        out[i] = lo_[i] + width * (static_cast<double>(c) + rng.uniform());
      }
      return;
    }
  }
}

}  // namespace softplex
