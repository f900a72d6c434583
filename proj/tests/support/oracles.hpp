// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

// Slow, obviously-correct reference implementations used by the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "softplex/geometry.hpp"
#include "softplex/point_process.hpp"

namespace oracle {

inline double dist2(const softplex::PointCloud& c, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t t = 0; t < c.dimension(); ++t) {
    const double diff = c.point(a)[t] - c.point(b)[t];
    s += diff * diff;
  }
  return s;
}

inline std::vector<softplex::Edge> brute_force_edges(const softplex::PointCloud& c, double r) {
  std::vector<softplex::Edge> out;
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    for (std::uint32_t j = i + 1; j < c.size(); ++j) {
      if (dist2(c, i, j) <= r * r) out.push_back({i, j});
    }
  }
  return out;
}

// All (k+1)-subsets with pairwise distances <= r, for k = 0..kmax, in lexicographic order.
inline std::vector<std::vector<std::vector<std::uint32_t>>> brute_force_rips(
    const softplex::PointCloud& c, double r, std::size_t kmax) {
  std::vector<std::vector<std::vector<std::uint32_t>>> faces(kmax + 1);
  std::vector<std::uint32_t> current;
  const auto n = static_cast<std::uint32_t>(c.size());
  std::function<void(std::uint32_t)> extend = [&](std::uint32_t start) {
    for (std::uint32_t v = start; v < n; ++v) {
      bool ok = true;
      for (auto u : current) ok = ok && dist2(c, u, v) <= r * r;
      if (!ok) continue;
      current.push_back(v);
      faces[current.size() - 1].push_back(current);
      if (current.size() <= kmax) extend(v + 1);
      current.pop_back();
    }
  };
  extend(0);
  return faces;
}

// Minimizes a convex function of one variable by repeated grid refinement: the
// best of 21 grid points always brackets the minimizer within one step.
inline double grid_minimize_1d(const std::function<double(double)>& g, double lo, double hi) {
  constexpr int kGrid = 20;
  double best = g(lo);
  for (int round = 0; round < 24 && hi - lo > 1e-15; ++round) {
    const double step = (hi - lo) / kGrid;
    double arg = lo;
    best = g(lo);
    for (int i = 1; i <= kGrid; ++i) {
      const double x = lo + i * step;
      const double v = g(x);
      if (v < best) {
        best = v;
        arg = x;
      }
    }
    lo = arg - step;
    hi = arg + step;
  }
  return best;
}

// Smallest enclosing circle radius by grid search over the center. Minimizing
// the convex max-distance over y leaves a convex function of x, so the search
// is done one axis at a time.
inline double grid_search_ball_radius_2d(const std::vector<double>& xy) {
  const std::size_t n = xy.size() / 2;
  auto cost = [&](double cx, double cy) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m = std::max(m, std::hypot(xy[2 * i] - cx, xy[2 * i + 1] - cy));
    }
    return m;
  };
  double lox = xy[0], hix = xy[0], loy = xy[1], hiy = xy[1];
  for (std::size_t i = 1; i < n; ++i) {
    lox = std::min(lox, xy[2 * i]);
    hix = std::max(hix, xy[2 * i]);
    loy = std::min(loy, xy[2 * i + 1]);
    hiy = std::max(hiy, xy[2 * i + 1]);
  }
  return grid_minimize_1d(
      [&](double cx) { return grid_minimize_1d([&](double cy) { return cost(cx, cy); }, loy, hiy); },
      lox, hix);
}

// Composite Simpson rule on [a,b] with an even number of panels.
inline double simpson(const std::function<double(double)>& g, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = g(a) + g(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

// Area of the intersection of two unit disks whose centers are rho apart.
inline double unit_lens_area(double rho) {
  if (rho >= 2.0) return 0.0;
  return 2.0 * std::acos(rho / 2.0) - 0.5 * rho * std::sqrt(4.0 - rho * rho);
}

// int_{B(0,1)} area(B(0,1) cap B(x,1)) dx in the plane: inner integral of mu_3 for d = 2.
inline double rips_triangle_inner_2d() {
  return simpson([](double rho) { return 2.0 * std::numbers::pi * rho * unit_lens_area(rho); }, 0.0,
                 1.0, 20000);
}

// Midpoint-rule volume of {x in [-1,1]^dims : indicator(x)} on a regular grid.
inline double grid_volume(int dims, int per_axis, const std::function<bool(const double*)>& indicator) {
  std::vector<double> x(dims);
  std::vector<int> idx(dims, 0);
  const double h = 2.0 / per_axis;
  double count = 0.0;
  while (true) {
    for (int t = 0; t < dims; ++t) x[t] = -1.0 + (idx[t] + 0.5) * h;
    if (indicator(x.data())) count += 1.0;
    int t = 0;
    while (t < dims && ++idx[t] == per_axis) idx[t++] = 0;
    if (t == dims) break;
  }
  return count * std::pow(h, dims);
}

// int f^m for an isotropic Gaussian in R^d.
inline double gaussian_power_integral(double sigma, std::size_t d, int m) {
  const double dd = static_cast<double>(d);
  return std::pow(2.0 * std::numbers::pi * sigma * sigma, -dd * (m - 1) / 2.0) * std::pow(m, -dd / 2.0);
}

inline double poisson_pmf(std::uint64_t k, double lambda) {
  return std::exp(static_cast<double>(k) * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

}  // namespace oracle
