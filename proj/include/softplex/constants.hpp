// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "softplex/complex.hpp"
#include "softplex/density.hpp"
#include "softplex/geometry.hpp"

namespace softplex {

/// mu/nu: limit constants of E f_k (Rips/Čech). phi/theta: covariance
/// coefficients for pairs of faces sharing j vertices (Rips/Čech).
enum class ConstantKind { mu, nu, phi, theta };

struct ConstantEstimate {
  ConstantKind kind = ConstantKind::mu;
  int k = 0;
  std::optional<int> l;
  std::optional<int> j;
  Region region;
  double value = 0.0;
  double standard_error = 0.0;  // sample sd / sqrt(samples), propagated through the product
  std::uint64_t samples = 0;
};

struct MonteCarloOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  /// Sample range is split into this many shards with derived seeds. The
  /// estimate depends on the shard count but not on the thread count.
  unsigned shards = 16;
  unsigned threads = 0;
};

/// C(a, b), zero when b < 0 or b > a.
std::int64_t binomial(int a, int b);

/// Exponent of p_i in the retention probability of a pair of faces of
/// dimensions k and l sharing j vertices: C(k+1,i+1) + C(l+1,i+1) - C(j,i+1).
std::int64_t retention_exponent(int k, int l, int j, int i);

/// Volume of the unit ball in R^d.
double unit_ball_volume(std::size_t d);

/// mu_{k+1,A} = 1/(k+1)! * int_A f^{k+1} * int 1{0,x_1..x_k is a Rips k-face at scale 1}.
/// For k = 0 this is int_A f.
ConstantEstimate estimate_mu(int k, const Density& density, const Region& region,
                             const MonteCarloOptions& options);
/// As estimate_mu with the Čech test (enclosing radius <= 1/2).
ConstantEstimate estimate_nu(int k, const Density& density, const Region& region,
                             const MonteCarloOptions& options);
/// Phi_{j,A}(f_k, f_l), 1 <= j <= min(k,l)+1.
ConstantEstimate estimate_phi(int k, int l, int j, const Density& density, const Region& region,
                              const MonteCarloOptions& options);
/// Theta_{j,A}(f_k, f_l), the Čech analogue of Phi.
ConstantEstimate estimate_theta(int k, int l, int j, const Density& density, const Region& region,
                                const MonteCarloOptions& options);

/// Set of estimates keyed by (kind, k, l, j); Phi/Theta lookups are symmetric in (k, l).
class ConstantTable {
 public:
  void insert(ConstantEstimate estimate);
  const ConstantEstimate* find(ConstantKind kind, int k, std::optional<int> l = std::nullopt,
                               std::optional<int> j = std::nullopt) const;
  const std::vector<ConstantEstimate>& entries() const noexcept { return entries_; }

 private:
  std::vector<ConstantEstimate> entries_;
};

/// Fills a table with everything predicted_moments needs for (k, l).
ConstantTable estimate_required_constants(Flavor flavor, int k, std::optional<int> l,
                                          const Density& density, const Region& region,
                                          const MonteCarloOptions& options);

struct MomentPrediction {
  double mean = 0.0;      // E f_k
  double variance = 0.0;  // leading-order var f_k
  std::optional<double> covariance;     // cov(f_k, f_l), full sum over shared-vertex counts
  std::optional<double> variance_full;  // var f_k, full sum (when Phi_j(k,k) are available)
};

/// Asymptotic moments of f_k in the sparse regime, evaluated in log space.
/// Throws ConfigError when a needed constant or retention probability is missing.
MomentPrediction predicted_moments(double n, double r, std::size_t d, const RhoVector& rho, int k,
                                   std::optional<int> l, Flavor flavor,
                                   const ConstantTable& constants);

enum class RegimeMode { face_count, euler };

struct RegimeThresholds {
  double sparse = 0.3;      // n r^d must be below this
  double growth = 1.0e3;    // growth quantity must exceed this
  double vanishing = 1e-2;  // euler mode: next-order quantity must be below this
};

struct RegimeReport {
  double n = 0.0;
  double r = 0.0;
  std::size_t d = 0;
  std::vector<double> log_rho;  // ln p_i
  RegimeMode mode = RegimeMode::face_count;
  int order = 0;  // k, or l in euler mode
  RegimeThresholds thresholds;
  double log_nrd = 0.0;
  double log_growth = 0.0;
  std::optional<double> log_vanishing;
  double nrd = 0.0;
  double growth = 0.0;
  std::optional<double> vanishing;
  bool sparse_ok = false;
  bool growth_ok = false;
  std::optional<bool> vanishing_ok;
  bool ok = false;
};

/// ln( prod_{i=1..k} p_i^{C(k+1,i+1)} n^{k+1} r^{dk} ) given ln p_i.
double log_growth_quantity(double n, double r, std::size_t d, std::span<const double> log_rho,
                           int k);

/// Finite-size proxies for the CLT hypotheses. Face-count mode checks n r^d and
/// the growth quantity for dimension `order`; Euler mode additionally requires the
/// growth quantity for dimension order+1 to be small.
RegimeReport regime_check(double n, double r, std::size_t d, std::span<const double> log_rho,
                          RegimeMode mode, int order, const RegimeThresholds& thresholds = {});
RegimeReport regime_check(double n, double r, std::size_t d, const RhoVector& rho,
                          RegimeMode mode, int order, const RegimeThresholds& thresholds = {});

}  // namespace softplex
