// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace softplex {

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

/// Largest supported point count per call; faces are small.
inline constexpr std::size_t kMaxBallPoints = 16;
inline constexpr std::size_t kMaxBallDimension = 16;

/// Smallest ball enclosing `count` points of dimension `dim` stored row-major in
/// `coords`, by Welzl's recursion with support sets of at most dim+1 points.
Ball min_enclosing_ball(std::span<const double> coords, std::size_t dim);

/// Radius of min_enclosing_ball without materialising the center.
double min_enclosing_ball_radius(std::span<const double> coords, std::size_t dim);

}  // namespace softplex
