// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "softplex/error.hpp"
#include "softplex/parallel.hpp"
#include "softplex/rng.hpp"

namespace softplex {

double ExperimentConfig::resolved_r() const {
  if (r.kind == RadiusRule::Kind::value) return r.value;
  return std::exp(-r.value * std::log(n) / static_cast<double>(dimension()));
}

RhoVector ExperimentConfig::resolved_rho() const {
  if (!rho) return RhoVector::ones(k_max);
  if (rho->kind == RhoRule::Kind::values) return RhoVector(rho->values);
  std::vector<double> p;
  for (double b : rho->values) p.push_back(std::exp(-b * std::log(n)));
  return RhoVector(p);
}

void ExperimentConfig::validate() const {
  if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError("n must be a positive number");
  if (process == ProcessKind::binomial && (n != std::floor(n) || n > 4294967295.0)) {
    throw ConfigError("binomial n must be an integer below 2^32");
  }
  if (replications < 2) throw ConfigError("replications must be at least 2");
  if (region.kind() != RegionKind::all && region.lo().size() != dimension()) {
    throw ConfigError("region dimension does not match the density");
  }
  const double radius = resolved_r();
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("r must be positive and finite");
  if (rho && rho->kind == RhoRule::Kind::exponents) {
    for (double b : rho->values) {
      if (!(b >= 0.0)) throw ConfigError("rho exponents must be nonnegative");
    }
  }
  const RhoVector p = resolved_rho();  // validates [0,1]
  if (p.size() < k_max) {
    throw ConfigError("rho needs " + std::to_string(k_max) + " entries, got " +
                      std::to_string(p.size()));
  }
  if (statistic.kind == Statistic::Kind::face_count &&
      (statistic.k < 0 || static_cast<std::size_t>(statistic.k) > k_max)) {
    throw ConfigError("statistic dimension must lie in 0..kmax");
  }
}

double expected_face_bound(const ExperimentConfig& config) {
  const double n = config.n;
  const double r = config.resolved_r();
  const std::size_t d = config.dimension();
  const RhoVector rho = config.resolved_rho();
  const double log_ball = std::log(config.density.sup_norm() * unit_ball_volume(d)) +
                          static_cast<double>(d) * std::log(r);
  double total = 0.0;
  for (std::size_t k = 0; k <= config.k_max; ++k) {
    const double kk = static_cast<double>(k);
    double log_bound = (kk + 1.0) * std::log(n) + kk * log_ball - std::lgamma(kk + 2.0);
    if (n >= kk + 1.0) {
      const double log_choose =
          std::lgamma(n + 1.0) - std::lgamma(kk + 2.0) - std::lgamma(n - kk);
      log_bound = std::min(log_bound, log_choose);
    }
    for (std::size_t i = 1; i <= k; ++i) {
      const double p = rho.p(i);
      if (p == 0.0) {
        log_bound = -std::numeric_limits<double>::infinity();
        break;
      }
      log_bound += static_cast<double>(binomial(static_cast<int>(k) + 1, static_cast<int>(i) + 1)) *
                   std::log(p);
    }
    total += std::exp(log_bound);
  }
  return total;
}

ReplicationResult run_replication(const ExperimentConfig& config, std::size_t index) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = derive_seed(config.master_seed, index);
  const std::uint64_t cloud_seed = derive_seed(seed, 0);
  const std::uint64_t thin_seed = derive_seed(seed, 1);

  auto cloud = std::make_shared<const PointCloud>(
      config.process == ProcessKind::binomial
          ? sample_binomial(static_cast<std::uint64_t>(config.n), config.density, cloud_seed)
          : sample_poisson(config.n, config.density, cloud_seed));
  const double r = config.resolved_r();
  const BuildLimits limits{config.max_faces};
  const GeometricGraph graph = build_graph(cloud, r);
  const SimplicialComplex complex = config.model == Flavor::rips
                                        ? build_rips(graph, config.k_max, limits)
                                        : build_cech(graph, config.k_max, limits);
  const SimplicialComplex thinned = soft_thin(complex, config.resolved_rho(), thin_seed);
  const FaceCounts counts = face_counts(thinned, config.region);

  ReplicationResult out;
  out.index = index;
  out.f = counts.f;
  out.chi = euler_characteristic(counts);
  out.n_points = cloud->size();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<ReplicationResult> run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const double bound = expected_face_bound(config);
  if (bound > static_cast<double>(config.max_faces)) {
    std::ostringstream msg;
    msg << "refusing to build: expected face count bound " << bound << " exceeds the cap "
        << config.max_faces << " (lower n, r or kmax, or raise max_faces)";
    throw RefusalError(msg.str());
  }
  std::vector<ReplicationResult> results(config.replications);
  parallel_for(config.replications, resolve_threads(threads),
               [&](std::size_t i) { results[i] = run_replication(config, i); });
  return results;
}

std::vector<double> statistic_samples(const std::vector<ReplicationResult>& results,
                                      const Statistic& statistic) {
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& rep : results) {
    if (statistic.kind == Statistic::Kind::euler) {
      out.push_back(static_cast<double>(rep.chi));
    } else {
      const auto k = static_cast<std::size_t>(statistic.k);
      if (k >= rep.f.size()) throw InputError("statistic dimension exceeds recorded counts");
      out.push_back(static_cast<double>(rep.f[k]));
    }
  }
  return out;
}

VarianceRatios variance_ratio_report(const std::vector<ReplicationResult>& results,
                                     std::size_t k_max) {
  if (results.size() < 2) throw InputError("variance ratios need at least two replications");
  const std::size_t cols = k_max + 2;
  std::vector<std::vector<double>> columns(cols);
  for (const auto& rep : results) {
    if (rep.f.size() != k_max + 1) throw InputError("replication face vector has wrong length");
    for (std::size_t k = 0; k <= k_max; ++k) columns[k].push_back(static_cast<double>(rep.f[k]));
    columns[k_max + 1].push_back(static_cast<double>(rep.chi));
  }
  VarianceRatios out;
  out.covariance.assign(cols, std::vector<double>(cols, 0.0));
  for (std::size_t a = 0; a < cols; ++a) {
    for (std::size_t b = a; b < cols; ++b) {
      out.covariance[a][b] = out.covariance[b][a] = sample_covariance(columns[a], columns[b]);
    }
  }
  const double v0 = out.covariance[0][0];
  auto ratio = [v0](double x) -> std::optional<double> {
    if (v0 > 0.0) return x / v0;
    return std::nullopt;
  };
  out.covariance_ratio.assign(k_max + 1, {});
  for (std::size_t k = 0; k <= k_max; ++k) {
    out.variance_ratio.push_back(ratio(out.covariance[k][k]));
    for (std::size_t l = 0; l <= k_max; ++l) {
      out.covariance_ratio[k].push_back(ratio(out.covariance[k][l]));
    }
  }
  out.chi_ratio = ratio(out.covariance[k_max + 1][k_max + 1]);
  return out;
}

namespace {

ConstantTable report_constants(const ExperimentConfig& config, unsigned threads) {
  ConstantTable table;
  MonteCarloOptions opt;
  opt.samples = config.constants_samples;
  opt.threads = threads;
  const int top = config.statistic.kind == Statistic::Kind::euler
                      ? static_cast<int>(config.k_max)
                      : config.statistic.k;
  const int bottom = config.statistic.kind == Statistic::Kind::euler ? 0 : top;
  for (int k = bottom; k <= top; ++k) {
    opt.seed = derive_seed(config.master_seed ^ 0x636f6e7374616e74ULL, static_cast<std::uint64_t>(k));
    table.insert(config.model == Flavor::rips
                     ? estimate_mu(k, config.density, config.region, opt)
                     : estimate_nu(k, config.density, config.region, opt));
  }
  return table;
}

}  // namespace

CltReport clt_report(const ExperimentConfig& config, const std::vector<ReplicationResult>& results,
                     const ConstantTable* constants, unsigned threads) {
  config.validate();
  const std::vector<double> x = statistic_samples(results, config.statistic);
  CltReport rep;
  rep.sample_size = x.size();
  rep.statistic = config.statistic;
  rep.empirical_mean = sample_mean(x);
  rep.empirical_variance = sample_variance(x);
  rep.z = normalize(x, Normalization::empirical());
  rep.ks = ks_statistic(rep.z);
  rep.ks_critical = ks_critical_value(x.size());
  rep.moments = moment_diagnostics(rep.z);
  rep.ratios = variance_ratio_report(results, config.k_max);

  const double n = config.n;
  const double r = config.resolved_r();
  const std::size_t d = config.dimension();
  const RhoVector rho = config.resolved_rho();
  if (config.statistic.kind == Statistic::Kind::euler) {
    const int l = config.k_max > 0 ? static_cast<int>(config.k_max) - 1 : 0;
    rep.regime = regime_check(n, r, d, rho, RegimeMode::euler, l);
  } else {
    rep.regime = regime_check(n, r, d, rho, RegimeMode::face_count, config.statistic.k);
  }

  std::optional<ConstantTable> owned;
  if (!constants && config.constants_samples > 0) {
    owned = report_constants(config, threads);
    constants = &*owned;
  }
  if (constants) {
    if (config.statistic.kind == Statistic::Kind::euler) {
      double mean = 0.0;
      for (std::size_t k = 0; k <= config.k_max; ++k) {
        const auto m = predicted_moments(n, r, d, rho, static_cast<int>(k), std::nullopt,
                                         config.model, *constants);
        mean += (k % 2 == 0 ? 1.0 : -1.0) * m.mean;
      }
      rep.predicted_mean = mean;
      // var(chi) ~ var(f_0) = mu_{0,A} n for the Poisson process.
      rep.predicted_variance =
          predicted_moments(n, r, d, rho, 0, std::nullopt, config.model, *constants).variance;
    } else {
      const auto m = predicted_moments(n, r, d, rho, config.statistic.k, std::nullopt,
                                       config.model, *constants);
      rep.predicted_mean = m.mean;
      rep.predicted_variance = m.variance;
    }
    if (*rep.predicted_variance > 0.0) {
      rep.z_predicted =
          normalize(x, Normalization::predicted(*rep.predicted_mean, *rep.predicted_variance));
      rep.ks_predicted = ks_statistic(*rep.z_predicted);
    }
  }
  return rep;
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> z) {
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.emplace_back(normal_quantile((static_cast<double>(i) + 0.5) / count), sorted[i]);
  }
  return out;
}

DepoissonReport depoisson_compare(const ExperimentConfig& config, unsigned threads) {
  ExperimentConfig binomial_config = config;
  binomial_config.process = ProcessKind::binomial;
  ExperimentConfig poisson_config = config;
  poisson_config.process = ProcessKind::poisson;

  const auto binomial_results = run_experiment(binomial_config, threads);
  const auto poisson_results = run_experiment(poisson_config, threads);

  std::optional<ConstantTable> constants;
  if (config.constants_samples > 0) constants = report_constants(config, threads);
  const ConstantTable* table = constants ? &*constants : nullptr;

  DepoissonReport out;
  ExperimentConfig no_constants = binomial_config;
  no_constants.constants_samples = 0;
  out.binomial = clt_report(table ? binomial_config : no_constants, binomial_results, table, threads);
  no_constants.process = ProcessKind::poisson;
  out.poisson = clt_report(table ? poisson_config : no_constants, poisson_results, table, threads);
  out.mean_difference = out.binomial.empirical_mean - out.poisson.empirical_mean;
  out.joint_stderr =
      std::sqrt(out.binomial.empirical_variance / static_cast<double>(out.binomial.sample_size) +
                out.poisson.empirical_variance / static_cast<double>(out.poisson.sample_size));
  return out;
}

}  // namespace softplex
