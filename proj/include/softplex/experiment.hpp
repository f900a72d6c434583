// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "softplex/complex.hpp"
#include "softplex/constants.hpp"
#include "softplex/density.hpp"
#include "softplex/geometry.hpp"
#include "softplex/point_process.hpp"
#include "softplex/stats.hpp"

namespace softplex {

/// Either an explicit radius or r^d = n^{-a}.
struct RadiusRule {
  enum class Kind { value, exponent };
  Kind kind = Kind::value;
  double value = 1.0;

  static RadiusRule fixed(double r) { return {Kind::value, r}; }
  static RadiusRule power(double a) { return {Kind::exponent, a}; }
};

/// Either explicit probabilities or p_i = n^{-b_i}.
struct RhoRule {
  enum class Kind { values, exponents };
  Kind kind = Kind::values;
  std::vector<double> values;
};

struct Statistic {
  enum class Kind { face_count, euler };
  Kind kind = Kind::face_count;
  int k = 1;  // unused for euler

  static Statistic fk(int k) { return {Kind::face_count, k}; }
  static Statistic chi() { return {Kind::euler, 0}; }
};

struct ExperimentConfig {
  Flavor model = Flavor::rips;
  ProcessKind process = ProcessKind::binomial;
  double n = 100.0;  // n, or lambda for the Poisson process
  Density density = Density::unit_cube(1);
  RadiusRule r;
  std::optional<RhoRule> rho;  // absent: all ones
  std::size_t k_max = 4;
  Region region;
  std::size_t replications = 2;
  std::uint64_t master_seed = 1;
  Statistic statistic;
  std::uint64_t max_faces = 50'000'000;
  std::uint64_t constants_samples = 1'000'000;

  std::size_t dimension() const noexcept { return density.dimension(); }
  double resolved_r() const;
  RhoVector resolved_rho() const;
  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;
};

struct ReplicationResult {
  std::size_t index = 0;
  std::vector<std::uint64_t> f;  // f_0..f_kmax restricted to the region
  std::int64_t chi = 0;
  std::uint64_t n_points = 0;
  double seconds = 0.0;

  friend bool operator==(const ReplicationResult&, const ReplicationResult&) = default;
};

/// Upper bound on the expected number of faces of dimension <= k_max, used as a guard.
double expected_face_bound(const ExperimentConfig& config);

/// One replication: sample, graph, complex, thin, count.
ReplicationResult run_replication(const ExperimentConfig& config, std::size_t index);

/// All replications of a config, ordered by index. Result does not depend on `threads`.
std::vector<ReplicationResult> run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// Value of the configured statistic in every replication.
std::vector<double> statistic_samples(const std::vector<ReplicationResult>& results,
                                      const Statistic& statistic);

struct VarianceRatios {
  /// Empirical covariance matrix over (f_0, ..., f_kmax, chi).
  std::vector<std::vector<double>> covariance;
  /// var(f_k)/var(f_0) at index k (index 0 is 1). Absent when var(f_0) = 0.
  std::vector<std::optional<double>> variance_ratio;
  /// cov(f_k, f_l)/var(f_0) at [k][l].
  std::vector<std::vector<std::optional<double>>> covariance_ratio;
  std::optional<double> chi_ratio;  // var(chi)/var(f_0)
};

VarianceRatios variance_ratio_report(const std::vector<ReplicationResult>& results,
                                     std::size_t k_max);

struct CltReport {
  std::size_t sample_size = 0;
  Statistic statistic;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  std::optional<double> predicted_mean;
  std::optional<double> predicted_variance;
  std::vector<double> z;  // empirical normalization
  std::optional<std::vector<double>> z_predicted;
  double ks = 0.0;
  double ks_critical = 0.0;  // 1% Kolmogorov level
  std::optional<double> ks_predicted;
  MomentDiagnostics moments;
  VarianceRatios ratios;
  RegimeReport regime;
};

/// Builds the report. Predictions need Monte Carlo constants, which are estimated with
/// `config.constants_samples` samples unless `constants` is given.
CltReport clt_report(const ExperimentConfig& config, const std::vector<ReplicationResult>& results,
                     const ConstantTable* constants = nullptr, unsigned threads = 0);

/// (theoretical, empirical) quantile pairs of the empirical z-scores.
std::vector<std::pair<double, double>> qq_points(std::span<const double> z);

struct DepoissonReport {
  CltReport binomial;
  CltReport poisson;
  double mean_difference = 0.0;  // binomial minus Poisson
  double joint_stderr = 0.0;
};

/// Runs `config` with the binomial process and with the Poisson process at lambda = n.
DepoissonReport depoisson_compare(const ExperimentConfig& config, unsigned threads = 0);

}  // namespace softplex
