// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "softplex/point_process.hpp"

namespace softplex {

enum class RegionKind { all, box, box_complement };

/// Region A used to restrict counts by leftmost point. Boxes are open;
/// the complement is R^d minus the closed box.
class Region {
 public:
  Region() = default;
  static Region all() { return {}; }
  static Region box(std::vector<double> lo, std::vector<double> hi);
  static Region box_complement(std::vector<double> lo, std::vector<double> hi);

  RegionKind kind() const noexcept { return kind_; }
  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }

  bool contains(std::span<const double> x) const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  RegionKind kind_ = RegionKind::all;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

inline bool in_region(std::span<const double> x, const Region& region) {
  return region.contains(x);
}

struct Edge {
  std::uint32_t i;
  std::uint32_t j;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Threshold graph G(X, r): edge {i,j} iff |x_i - x_j| <= r, optionally with
/// each such edge kept independently with probability p1.
class GeometricGraph {
 public:
  GeometricGraph(std::shared_ptr<const PointCloud> cloud, double r, std::vector<Edge> edges,
                 std::optional<double> edge_retention, std::uint64_t seed);

  const PointCloud& cloud() const noexcept { return *cloud_; }
  std::shared_ptr<const PointCloud> cloud_ptr() const noexcept { return cloud_; }
  std::size_t vertex_count() const noexcept { return cloud_->size(); }
  double r() const noexcept { return r_; }
  std::optional<double> edge_retention() const noexcept { return edge_retention_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Sorted (i < j), duplicate-free.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted neighbors of vertex v.
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  bool has_edge(std::uint32_t a, std::uint32_t b) const noexcept;

 private:
  std::shared_ptr<const PointCloud> cloud_;
  double r_;
  std::vector<Edge> edges_;
  std::optional<double> edge_retention_;
  std::uint64_t seed_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Grid-accelerated construction (cells of side r over the cloud's bounding box).
/// When p1 is set, edge {i,j} is kept iff face_uniform(seed, 1, {i,j}) < p1.
GeometricGraph build_graph(std::shared_ptr<const PointCloud> cloud, double r,
                           std::optional<double> p1 = std::nullopt, std::uint64_t seed = 0);

/// Index of the lexicographically smallest point among `vertices`; ties go to the lower index.
std::uint32_t leftmost_point(std::span<const std::uint32_t> vertices, const PointCloud& cloud);

/// Edge list as CSV with header `i,j`.
void write_edges_csv(std::ostream& out, const GeometricGraph& graph);

}  // namespace softplex
