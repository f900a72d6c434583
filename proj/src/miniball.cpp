// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/miniball.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>

#include "softplex/error.hpp"

namespace softplex {

namespace {

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxBallDimension, 1>;
using Gram = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxBallDimension + 1,
                           kMaxBallDimension + 1>;

struct SmallBall {
  Vec center;
  double radius2 = -1.0;  // negative: empty ball
};

class Welzl {
 public:
  Welzl(std::span<const double> coords, std::size_t dim)
      : coords_(coords), dim_(dim), count_(coords.size() / dim) {}

  SmallBall solve() { return recurse(count_, 0); }

 private:
  Eigen::Map<const Eigen::VectorXd> point(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<Eigen::Index>(dim_)};
  }

  bool inside(const SmallBall& b, std::size_t i) const {
    if (b.radius2 < 0.0) return false;
    const double d2 = (point(i) - b.center).squaredNorm();
    // Relative slack for points that define the boundary.
    return d2 <= b.radius2 * (1.0 + 1e-12) + 1e-300;
  }

  SmallBall recurse(std::size_t n, std::size_t nsupport) {
    if (n == 0 || nsupport == dim_ + 1) return circumball(nsupport);
    const std::size_t p = n - 1;
    SmallBall b = recurse(n - 1, nsupport);
    if (inside(b, p)) return b;
    support_[nsupport] = p;
    return recurse(n - 1, nsupport + 1);
  }

  // Smallest ball with all support points on its boundary, center in their affine hull.
  SmallBall circumball(std::size_t m) const {
    SmallBall b;
    if (m == 0) return b;
    const auto p0 = point(support_[0]);
    b.center = p0;
    b.radius2 = 0.0;
    if (m == 1) return b;

    const auto k = static_cast<Eigen::Index>(m - 1);
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxBallDimension,
                  kMaxBallDimension + 1>
        v(static_cast<Eigen::Index>(dim_), k);
    for (Eigen::Index i = 0; i < k; ++i) v.col(i) = point(support_[i + 1]) - p0;
    Gram g = 2.0 * v.transpose() * v;
    Vec rhs(k);
    for (Eigen::Index i = 0; i < k; ++i) rhs(i) = v.col(i).squaredNorm();
    Eigen::ColPivHouseholderQR<Gram> qr(g);
    if (qr.rank() < k) {
      // Affinely dependent support (a measure-zero configuration): the farthest
      // pair's diametral ball is the smallest ball through the support.
      return dependent_support(m);
    }
    const Vec lambda = qr.solve(rhs);
    b.center = p0 + v * lambda;
    b.radius2 = (b.center - p0).squaredNorm();
    return b;
  }

  SmallBall dependent_support(std::size_t m) const {
    SmallBall best;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t c = a + 1; c < m; ++c) {
        SmallBall b;
        b.center = 0.5 * (point(support_[a]) + point(support_[c]));
        b.radius2 = 0.25 * (point(support_[a]) - point(support_[c])).squaredNorm();
        bool ok = true;
        for (std::size_t s = 0; s < m && ok; ++s) ok = inside(b, support_[s]);
        if (ok && (best.radius2 < 0.0 || b.radius2 < best.radius2)) best = b;
      }
    }
    return best;
  }

  std::span<const double> coords_;
  std::size_t dim_;
  std::size_t count_;
  std::array<std::size_t, kMaxBallDimension + 1> support_{};
};

SmallBall solve_small(std::span<const double> coords, std::size_t dim) {
  if (dim == 0 || coords.size() % dim != 0 || coords.empty()) {
    throw InputError("min_enclosing_ball: need at least one point of positive dimension");
  }
  if (dim > kMaxBallDimension || coords.size() / dim > kMaxBallPoints) {
    throw InputError("min_enclosing_ball: too many points or dimensions for the small solver");
  }
  return Welzl(coords, dim).solve();
}

}  // namespace

Ball min_enclosing_ball(std::span<const double> coords, std::size_t dim) {
  const SmallBall b = solve_small(coords, dim);
  return Ball{std::vector<double>(b.center.data(), b.center.data() + b.center.size()),
              std::sqrt(b.radius2)};
}

double min_enclosing_ball_radius(std::span<const double> coords, std::size_t dim) {
  return std::sqrt(solve_small(coords, dim).radius2);
}

}  // namespace softplex
