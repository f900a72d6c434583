// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace softplex {

/// Streaming mean and sum of squared deviations (Welford), mergeable
/// (Chan et al.) so sharded estimates combine exactly in a fixed order.
class RunningMoments {
 public:
  void add(double x) noexcept;
  void merge(const RunningMoments& other) noexcept;

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; zero for fewer than two observations.
  double variance() const noexcept;
  /// Variance of the sample mean.
  double variance_of_mean() const noexcept;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double sample_mean(std::span<const double> x);
/// 1/(R-1) normalisation.
double sample_variance(std::span<const double> x);
double sample_covariance(std::span<const double> x, std::span<const double> y);

/// Standard normal CDF via erfc.
double normal_cdf(double x);
double normal_quantile(double p);

/// How z-scores are centred and scaled.
struct Normalization {
  enum class Mode { empirical, predicted };
  Mode mode = Mode::empirical;
  double mean = 0.0;
  double variance = 1.0;

  static Normalization empirical() { return {}; }
  static Normalization predicted(double mean, double variance) {
    return {Mode::predicted, mean, variance};
  }
};

/// (x_i - centre) / sqrt(scale). Empirical mode uses the sample mean and the
/// 1/(R-1) variance and throws DegenerateSampleError on zero variance.
std::vector<double> normalize(std::span<const double> samples, const Normalization& mode);

/// sup_x |F_R(x) - Phi(x)| for the empirical CDF of z.
double ks_statistic(std::span<const double> z);

/// Asymptotic Kolmogorov critical value c_alpha / sqrt(R); alpha = 0.01 gives 1.63/sqrt(R).
double ks_critical_value(std::size_t sample_size, double alpha = 0.01);

struct MomentDiagnostics {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double jarque_bera = 0.0;
};

/// Population-moment skewness and excess kurtosis; JB = R/6 (S^2 + K^2/4).
MomentDiagnostics moment_diagnostics(std::span<const double> z);

}  // namespace softplex
