// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "softplex/error.hpp"
#include "softplex/rng.hpp"

namespace softplex {

namespace {

void check_region_box(const std::vector<double>& lo, const std::vector<double>& hi) {
  if (lo.empty() || lo.size() != hi.size()) throw ConfigError("region box: lo/hi dimension mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw ConfigError("region box: need lo < hi in every coordinate");
  }
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Cells of side r over the bounding box; points are bucketed by the
// lexicographic order of their integer cell coordinates.
class CellGrid {
 public:
  CellGrid(const PointCloud& cloud, double r) : d_(cloud.dimension()) {
    const std::size_t n = cloud.size();
    std::vector<double> lo(d_, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d_, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      for (std::size_t a = 0; a < d_; ++a) {
        lo[a] = std::min(lo[a], p[a]);
        hi[a] = std::max(hi[a], p[a]);
      }
    }
    for (std::size_t a = 0; a < d_; ++a) {
      if ((hi[a] - lo[a]) / r > 4.0e18) {
        throw InputError("threshold r is too small relative to the cloud's extent for the cell grid");
      }
    }
    cell_of_point_.resize(n * d_);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      for (std::size_t a = 0; a < d_; ++a) {
        cell_of_point_[i * d_ + a] = static_cast<std::int64_t>(std::floor((p[a] - lo[a]) / r));
      }
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::uint32_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t x, std::uint32_t y) {
      auto cx = point_cell(x);
      auto cy = point_cell(y);
      const int c = compare(cx, cy);
      return c != 0 ? c < 0 : x < y;
    });
    for (std::size_t k = 0; k < n; ++k) {
      if (k == 0 || compare(point_cell(order_[k]), point_cell(order_[k - 1])) != 0) {
        cell_start_.push_back(k);
      }
    }
    cell_start_.push_back(n);
  }

  std::size_t cell_count() const { return cell_start_.size() - 1; }
  std::span<const std::uint32_t> members(std::size_t c) const {
    return {order_.data() + cell_start_[c], order_.data() + cell_start_[c + 1]};
  }
  std::span<const std::int64_t> cell_coords(std::size_t c) const {
    return point_cell(order_[cell_start_[c]]);
  }
  /// Index of the cell with the given coordinates, or cell_count() if empty.
  std::size_t find(std::span<const std::int64_t> coords) const {
    std::size_t lo = 0;
    std::size_t hi = cell_count();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (compare(cell_coords(mid), coords) < 0) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < cell_count() && compare(cell_coords(lo), coords) == 0) return lo;
    return cell_count();
  }

 private:
  std::span<const std::int64_t> point_cell(std::uint32_t i) const {
    return {cell_of_point_.data() + static_cast<std::size_t>(i) * d_, d_};
  }
  static int compare(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
    }
    return 0;
  }

  std::size_t d_;
  std::vector<std::int64_t> cell_of_point_;
  std::vector<std::uint32_t> order_;
  std::vector<std::size_t> cell_start_;
};

}  // namespace

Region Region::box(std::vector<double> lo, std::vector<double> hi) {
  check_region_box(lo, hi);
  Region region;
  region.kind_ = RegionKind::box;
  region.lo_ = std::move(lo);
  region.hi_ = std::move(hi);
  return region;
}

Region Region::box_complement(std::vector<double> lo, std::vector<double> hi) {
  Region region = box(std::move(lo), std::move(hi));
  region.kind_ = RegionKind::box_complement;
  return region;
}

bool Region::contains(std::span<const double> x) const {
  if (kind_ == RegionKind::all) return true;
  if (x.size() != lo_.size()) {
    throw InputError("region of dimension " + std::to_string(lo_.size()) +
                     " queried with a point of dimension " + std::to_string(x.size()));
  }
  if (kind_ == RegionKind::box) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo_[i] || x[i] > hi_[i]) return true;
  }
  return false;
}

GeometricGraph::GeometricGraph(std::shared_ptr<const PointCloud> cloud, double r,
                               std::vector<Edge> edges, std::optional<double> edge_retention,
                               std::uint64_t seed)
    : cloud_(std::move(cloud)),
      r_(r),
      edges_(std::move(edges)),
      edge_retention_(edge_retention),
      seed_(seed) {
  const std::size_t n = cloud_->size();
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    if (e.i >= e.j || e.j >= n) throw InputError("edge list must hold pairs i < j < n");
    ++offsets_[e.i + 1];
    ++offsets_[e.j + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.i]++] = e.j;
    adjacency_[cursor[e.j]++] = e.i;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

bool GeometricGraph::has_edge(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a == b || a >= vertex_count() || b >= vertex_count()) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

GeometricGraph build_graph(std::shared_ptr<const PointCloud> cloud, double r,
                           std::optional<double> p1, std::uint64_t seed) {
  if (!cloud) throw InputError("build_graph: null cloud");
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("threshold r must be positive and finite");
  if (p1 && !(*p1 >= 0.0 && *p1 <= 1.0)) throw InputError("edge retention p1 must lie in [0,1]");

  std::vector<Edge> edges;
  const double r2 = r * r;
  const std::size_t d = cloud->dimension();
  auto keep = [&](std::uint32_t a, std::uint32_t b) {
    if (squared_distance(cloud->point(a), cloud->point(b)) > r2) return;
    const Edge e{std::min(a, b), std::max(a, b)};
    if (p1) {
      const std::uint32_t pair[2] = {e.i, e.j};
      if (!(face_uniform(seed, 1, pair) < *p1)) return;
    }
    edges.push_back(e);
  };

  if (!cloud->empty()) {
    const CellGrid grid(*cloud, r);
    std::vector<std::int64_t> probe(d);
    std::vector<int> offset(d, -1);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
      auto here = grid.members(c);
      for (std::size_t x = 0; x < here.size(); ++x) {
        for (std::size_t y = x + 1; y < here.size(); ++y) keep(here[x], here[y]);
      }
      // Visit the 3^d stencil; each unordered pair of distinct cells once (c2 > c).
      auto base = grid.cell_coords(c);
      std::fill(offset.begin(), offset.end(), -1);
      for (;;) {
        bool centre = true;
        for (std::size_t a = 0; a < d; ++a) {
          probe[a] = base[a] + offset[a];
          centre = centre && offset[a] == 0;
        }
        if (!centre) {
          const std::size_t c2 = grid.find(probe);
          if (c2 != grid.cell_count() && c2 > c) {
            for (std::uint32_t u : here) {
              for (std::uint32_t v : grid.members(c2)) keep(u, v);
            }
          }
        }
        std::size_t a = 0;
        while (a < d && offset[a] == 1) offset[a++] = -1;
        if (a == d) break;
        ++offset[a];
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return GeometricGraph(std::move(cloud), r, std::move(edges), p1, seed);
}

std::uint32_t leftmost_point(std::span<const std::uint32_t> vertices, const PointCloud& cloud) {
  if (vertices.empty()) throw InputError("leftmost_point of an empty vertex set");
  std::uint32_t best = vertices[0];
  for (std::uint32_t v : vertices.subspan(1)) {
    if (v >= cloud.size()) throw InputError("vertex index out of range");
    const auto pv = cloud.point(v);
    const auto pb = cloud.point(best);
    if (lex_less(pv, pb) || (!lex_less(pb, pv) && v < best)) best = v;
  }
  if (best >= cloud.size()) throw InputError("vertex index out of range");
  return best;
}

void write_edges_csv(std::ostream& out, const GeometricGraph& graph) {
  out << "i,j\n";
  for (const Edge& e : graph.edges()) out << e.i << ',' << e.j << '\n';
}

}  // namespace softplex
