// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/complex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "softplex/error.hpp"
#include "softplex/miniball.hpp"
#include "softplex/rng.hpp"

namespace softplex {

namespace {

// Lexicographic search for `face` in a flat array of tuples with stride face.size().
bool flat_contains(std::span<const std::uint32_t> flat, std::span<const std::uint32_t> face) {
  const std::size_t s = face.size();
  std::size_t lo = 0;
  std::size_t hi = flat.size() / s;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto probe = flat.subspan(mid * s, s);
    if (std::lexicographical_compare(probe.begin(), probe.end(), face.begin(), face.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == flat.size() / s) return false;
  auto probe = flat.subspan(lo * s, s);
  return std::equal(probe.begin(), probe.end(), face.begin());
}

void check_limit(std::uint64_t total, const BuildLimits& limits) {
  if (total > limits.max_faces) {
    throw RefusalError("complex exceeds the face cap of " + std::to_string(limits.max_faces) +
                       " faces; lower n, r or k_max, or raise max_faces");
  }
}

SimplicialComplex build_complex(const GeometricGraph& graph, std::size_t k_max, Flavor flavor,
                                const BuildLimits& limits) {
  const PointCloud& cloud = graph.cloud();
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dimension();
  const double half_r = graph.r() / 2.0;

  std::vector<std::vector<std::uint32_t>> faces(k_max + 1);
  faces[0].resize(n);
  std::iota(faces[0].begin(), faces[0].end(), std::uint32_t{0});
  std::uint64_t total = n;
  check_limit(total, limits);
  if (k_max >= 1) {
    faces[1].reserve(graph.edges().size() * 2);
    for (const Edge& e : graph.edges()) {
      faces[1].push_back(e.i);
      faces[1].push_back(e.j);
    }
    total += graph.edges().size();
    check_limit(total, limits);
  }

  std::vector<double> coords;
  for (std::size_t k = 1; k < k_max; ++k) {
    const std::span<const std::uint32_t> lower = faces[k];
    std::vector<std::uint32_t>& upper = faces[k + 1];
    const std::size_t s = k + 1;
    const std::size_t count = lower.size() / s;
    std::size_t a = 0;
    while (a < count) {
      // Group of k-faces sharing their first k vertices.
      std::size_t b = a + 1;
      while (b < count && std::equal(lower.begin() + a * s, lower.begin() + a * s + k,
                                     lower.begin() + b * s)) {
        ++b;
      }
      for (std::size_t x = a; x < b; ++x) {
        for (std::size_t y = x + 1; y < b; ++y) {
          const std::uint32_t u = lower[x * s + k];
          const std::uint32_t v = lower[y * s + k];
          if (!graph.has_edge(u, v)) continue;
          if (flavor == Flavor::cech) {
            coords.clear();
            for (std::size_t t = 0; t < s; ++t) {
              auto p = cloud.point(lower[x * s + t]);
              coords.insert(coords.end(), p.begin(), p.end());
            }
            auto p = cloud.point(v);
            coords.insert(coords.end(), p.begin(), p.end());
            if (!(min_enclosing_ball_radius(coords, d) <= half_r)) continue;
          }
          upper.insert(upper.end(), lower.begin() + x * s, lower.begin() + x * s + s);
          upper.push_back(v);
          check_limit(++total, limits);
        }
      }
      a = b;
    }
    if (upper.empty()) break;
  }
  return SimplicialComplex(graph.cloud_ptr(), flavor, graph.r(), k_max, std::move(faces),
                           std::nullopt, 0);
}

}  // namespace

RhoVector::RhoVector(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  for (double p : p_) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("retention probabilities must lie in [0,1]");
  }
}

double RhoVector::p(std::size_t i) const {
  if (i == 0 || i > p_.size()) {
    throw ConfigError("retention probability p_" + std::to_string(i) + " is not defined");
  }
  return p_[i - 1];
}

SimplicialComplex::SimplicialComplex(std::shared_ptr<const PointCloud> cloud, Flavor flavor,
                                     double r, std::size_t k_max,
                                     std::vector<std::vector<std::uint32_t>> faces,
                                     std::optional<RhoVector> rho, std::uint64_t seed)
    : cloud_(std::move(cloud)),
      flavor_(flavor),
      r_(r),
      k_max_(k_max),
      faces_(std::move(faces)),
      rho_(std::move(rho)),
      seed_(seed) {
  faces_.resize(k_max_ + 1);
  for (std::size_t k = 0; k <= k_max_; ++k) {
    if (faces_[k].size() % (k + 1) != 0) throw InputError("face array has a ragged stride");
  }
}

bool SimplicialComplex::contains(std::span<const std::uint32_t> face) const {
  if (face.empty() || face.size() > k_max_ + 1) return false;
  return flat_contains(faces_[face.size() - 1], face);
}

SimplicialComplex build_rips(const GeometricGraph& graph, std::size_t k_max,
                             const BuildLimits& limits) {
  return build_complex(graph, k_max, Flavor::rips, limits);
}

SimplicialComplex build_cech(const GeometricGraph& graph, std::size_t k_max,
                             const BuildLimits& limits) {
  if (graph.edge_retention()) {
    throw InputError("Čech construction needs the unthinned threshold graph");
  }
  return build_complex(graph, k_max, Flavor::cech, limits);
}

SimplicialComplex build_cech(std::shared_ptr<const PointCloud> cloud, double r, std::size_t k_max,
                             const BuildLimits& limits) {
  return build_cech(build_graph(std::move(cloud), r), k_max, limits);
}

SimplicialComplex soft_thin(const SimplicialComplex& complex, const RhoVector& rho,
                            std::uint64_t seed) {
  if (complex.rho()) throw ConfigError("complex has already been thinned");
  const std::size_t k_max = complex.k_max();
  if (rho.size() < k_max) {
    throw ConfigError("rho has " + std::to_string(rho.size()) +
                      " entries but the complex has dimension cap " + std::to_string(k_max));
  }
  std::vector<std::vector<std::uint32_t>> kept(k_max + 1);
  kept[0].assign(complex.faces(0).begin(), complex.faces(0).end());

  std::vector<std::uint32_t> sub;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double p = rho.p(k);
    const std::size_t count = complex.face_count(k);
    for (std::size_t idx = 0; idx < count; ++idx) {
      auto face = complex.face(k, idx);
      if (!(face_uniform(seed, static_cast<std::uint32_t>(k), face) < p)) continue;
      bool closed = true;
      if (k >= 2) {
        for (std::size_t omit = 0; omit <= k && closed; ++omit) {
          sub.clear();
          for (std::size_t t = 0; t <= k; ++t) {
            if (t != omit) sub.push_back(face[t]);
          }
          closed = flat_contains(kept[k - 1], sub);
        }
      }
      if (closed) kept[k].insert(kept[k].end(), face.begin(), face.end());
    }
  }
  return SimplicialComplex(complex.cloud_ptr(), complex.flavor(), complex.r(), k_max,
                           std::move(kept), rho, seed);
}

FaceCounts face_counts(const SimplicialComplex& complex, const Region& region) {
  FaceCounts counts{std::vector<std::uint64_t>(complex.k_max() + 1, 0), region};
  if (region.kind() == RegionKind::all) {
    for (std::size_t k = 0; k <= complex.k_max(); ++k) counts.f[k] = complex.face_count(k);
    return counts;
  }
  // The leftmost point of a face is its vertex of least lexicographic rank.
  const PointCloud& cloud = complex.cloud();
  const std::size_t n = cloud.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), std::uint32_t{0});
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto pa = cloud.point(a);
    auto pb = cloud.point(b);
    if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end())) return true;
    if (std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(), pa.end())) return false;
    return a < b;
  });
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<std::uint32_t>(i);
  std::vector<char> inside(n);
  for (std::size_t v = 0; v < n; ++v) inside[v] = region.contains(cloud.point(v)) ? 1 : 0;

  for (std::size_t k = 0; k <= complex.k_max(); ++k) {
    const std::size_t count = complex.face_count(k);
    for (std::size_t idx = 0; idx < count; ++idx) {
      auto face = complex.face(k, idx);
      std::uint32_t lmp = face[0];
      for (std::uint32_t v : face) {
        if (rank[v] < rank[lmp]) lmp = v;
      }
      counts.f[k] += static_cast<std::uint64_t>(inside[lmp]);
    }
  }
  return counts;
}

std::int64_t euler_characteristic(std::span<const std::uint64_t> f) {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto term = static_cast<std::int64_t>(f[k]);
    chi += (k % 2 == 0) ? term : -term;
  }
  return chi;
}

void write_faces_csv(std::ostream& out, const SimplicialComplex& complex, std::size_t k) {
  for (std::size_t t = 0; t <= k; ++t) out << (t ? ",v" : "v") << t;
  out << '\n';
  for (std::size_t idx = 0; idx < complex.face_count(k); ++idx) {
    auto face = complex.face(k, idx);
    for (std::size_t t = 0; t <= k; ++t) out << (t ? "," : "") << face[t];
    out << '\n';
  }
}

}  // namespace softplex
