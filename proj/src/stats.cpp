// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>

#include "softplex/error.hpp"

namespace softplex {

void RunningMoments::add(double x) noexcept {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double total = na + nb;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

double RunningMoments::variance() const noexcept {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningMoments::variance_of_mean() const noexcept {
  return count_ == 0 ? 0.0 : variance() / static_cast<double>(count_);
}

double sample_mean(std::span<const double> x) {
  if (x.empty()) throw DegenerateSampleError("mean of an empty sample");
  RunningMoments m;
  for (double v : x) m.add(v);
  return m.mean();
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw DegenerateSampleError("variance needs at least two samples");
  RunningMoments m;
  for (double v : x) m.add(v);
  return m.variance();
}

double sample_covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("covariance of samples with different lengths");
  if (x.size() < 2) throw DegenerateSampleError("covariance needs at least two samples");
  const double mx = sample_mean(x);
  const double my = sample_mean(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(x.size() - 1);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("normal quantile needs 0 < p < 1");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

std::vector<double> normalize(std::span<const double> samples, const Normalization& mode) {
  if (samples.size() < 2) throw DegenerateSampleError("normalization needs at least two samples");
  double centre = mode.mean;
  double scale = mode.variance;
  if (mode.mode == Normalization::Mode::empirical) {
    centre = sample_mean(samples);
    scale = sample_variance(samples);
    if (!(scale > 0.0)) throw DegenerateSampleError("sample has zero variance");
  } else if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DegenerateSampleError("predicted variance must be positive and finite");
  }
  const double sd = std::sqrt(scale);
  std::vector<double> z(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) z[i] = (samples[i] - centre) / sd;
  return z;
}

double ks_statistic(std::span<const double> z) {
  if (z.empty()) throw DegenerateSampleError("KS statistic of an empty sample");
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end());
  const double r = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / r - cdf, cdf - static_cast<double>(i) / r});
  }
  return d;
}

double ks_critical_value(std::size_t sample_size, double alpha) {
  if (sample_size == 0) throw InputError("KS critical value for an empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0,1)");
  // Leading term of the Kolmogorov tail: P(K > c) ~ 2 exp(-2 c^2).
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c / std::sqrt(static_cast<double>(sample_size));
}

MomentDiagnostics moment_diagnostics(std::span<const double> z) {
  if (z.size() < 2) throw DegenerateSampleError("moment diagnostics need at least two samples");
  const double mean = sample_mean(z);
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : z) {
    const double t = v - mean;
    const double t2 = t * t;
    m2 += t2;
    m3 += t2 * t;
    m4 += t2 * t2;
  }
  const double r = static_cast<double>(z.size());
  m2 /= r;
  m3 /= r;
  m4 /= r;
  if (!(m2 > 0.0)) throw DegenerateSampleError("sample has zero variance");
  MomentDiagnostics out;
  out.skewness = m3 / std::pow(m2, 1.5);
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  out.jarque_bera =
      r / 6.0 * (out.skewness * out.skewness + out.excess_kurtosis * out.excess_kurtosis / 4.0);
  return out;
}

}  // namespace softplex
