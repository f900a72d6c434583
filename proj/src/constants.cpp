// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "softplex/error.hpp"
#include "softplex/miniball.hpp"
#include "softplex/parallel.hpp"
#include "softplex/rng.hpp"
#include "softplex/stats.hpp"

namespace softplex {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double factorial(int m) { return std::tgamma(static_cast<double>(m) + 1.0); }

// Integrand of one constant: m points, the first at the origin, and one or two
// vertex tuples that must each span a face at scale 1.
struct Integrand {
  ConstantKind kind;
  int k = 0;
  int l = 0;
  int j = 0;
  int points = 1;             // m
  double combinatorial = 1.0;  // 1/(k+1)! or 1/(j!(k+1-j)!(l+1-j)!)
  std::vector<int> first;
  std::vector<int> second;
};

Integrand make_integrand(ConstantKind kind, int k, int l, int j) {
  if (k < 0 || l < 0) throw InputError("face dimensions must be nonnegative");
  Integrand in;
  in.kind = kind;
  in.k = k;
  in.l = l;
  in.j = j;
  if (kind == ConstantKind::mu || kind == ConstantKind::nu) {
    in.points = k + 1;
    in.combinatorial = 1.0 / factorial(k + 1);
    for (int t = 0; t <= k; ++t) in.first.push_back(t);
    return in;
  }
  if (j < 1 || j > std::min(k, l) + 1) {
    throw InputError("shared-vertex count j=" + std::to_string(j) + " outside [1, min(k,l)+1]");
  }
  in.points = k + l + 2 - j;
  in.combinatorial = 1.0 / (factorial(j) * factorial(k + 1 - j) * factorial(l + 1 - j));
  for (int t = 0; t <= k; ++t) in.first.push_back(t);
  for (int t = 0; t < j; ++t) in.second.push_back(t);
  for (int t = k + 1; t < in.points; ++t) in.second.push_back(t);
  return in;
}

bool is_cech(ConstantKind kind) { return kind == ConstantKind::nu || kind == ConstantKind::theta; }

class IndicatorEvaluator {
 public:
  IndicatorEvaluator(const Integrand& integrand, std::size_t d) : in_(integrand), d_(d) {
    if (is_cech(in_.kind) && (d_ > kMaxBallDimension ||
                              static_cast<std::size_t>(in_.points) > kMaxBallPoints)) {
      throw InputError("Čech constant: too many points or dimensions for the enclosing-ball solver");
    }
    scratch_.reserve(static_cast<std::size_t>(in_.points) * d_);
  }

  bool operator()(std::span<const double> pts) {
    if (!spans_face(pts, in_.first)) return false;
    return in_.second.empty() || spans_face(pts, in_.second);
  }

 private:
  bool spans_face(std::span<const double> pts, const std::vector<int>& tuple) {
    if (tuple.size() < 2) return true;
    if (!is_cech(in_.kind)) {
      for (std::size_t a = 0; a < tuple.size(); ++a) {
        for (std::size_t b = a + 1; b < tuple.size(); ++b) {
          if (squared_distance(pts.subspan(tuple[a] * d_, d_), pts.subspan(tuple[b] * d_, d_)) >
              1.0) {
            return false;
          }
        }
      }
      return true;
    }
    scratch_.clear();
    for (int t : tuple) {
      auto p = pts.subspan(t * d_, d_);
      scratch_.insert(scratch_.end(), p.begin(), p.end());
    }
    return min_enclosing_ball_radius(scratch_, d_) <= 0.5;
  }

  const Integrand& in_;
  std::size_t d_;
  std::vector<double> scratch_;
};

void sample_unit_ball(Rng& rng, std::span<double> out) {
  const std::size_t d = out.size();
  if (d == 1) {
    out[0] = rng.uniform(-1.0, 1.0);
    return;
  }
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : out) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (!(norm2 > 0.0));
  const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  const double scale = radius / std::sqrt(norm2);
  for (double& v : out) v *= scale;
}

ConstantEstimate estimate(ConstantKind kind, int k, int l, int j, const Density& density,
                          const Region& region, const MonteCarloOptions& options) {
  if (options.samples == 0) throw InputError("Monte Carlo needs at least one sample");
  const Integrand in = make_integrand(kind, k, l, j);
  const std::size_t d = density.dimension();
  const unsigned shards = std::max(1u, options.shards);
  const auto m = static_cast<std::size_t>(in.points);

  std::vector<RunningMoments> outer(shards);
  std::vector<RunningMoments> inner(shards);
  parallel_for(shards, resolve_threads(options.threads), [&](std::size_t shard) {
    std::uint64_t count = options.samples / shards;
    if (shard < options.samples % shards) ++count;
    Rng rng(derive_seed(options.seed, shard));
    std::vector<double> x(d);
    // Outer factor: int_A f^m = E_f[ f(X)^{m-1} 1{X in A} ].
    for (std::uint64_t s = 0; s < count; ++s) {
      density.sample(rng, x);
      double value = 0.0;
      if (region.contains(x)) value = m == 1 ? 1.0 : std::pow(density(x), static_cast<double>(m - 1));
      outer[shard].add(value);
    }
    if (m == 1) return;
    // Inner factor: points 2..m uniform on B(0,1)^{m-1}, point 1 at the origin.
    IndicatorEvaluator indicator(in, d);
    std::vector<double> pts(m * d, 0.0);
    for (std::uint64_t s = 0; s < count; ++s) {
      for (std::size_t t = 1; t < m; ++t) sample_unit_ball(rng, std::span(pts).subspan(t * d, d));
      inner[shard].add(indicator(pts) ? 1.0 : 0.0);
    }
  });

  RunningMoments a;
  RunningMoments b;
  for (unsigned s = 0; s < shards; ++s) {
    a.merge(outer[s]);
    b.merge(inner[s]);
  }

  ConstantEstimate est;
  est.kind = kind;
  est.k = k;
  if (kind == ConstantKind::phi || kind == ConstantKind::theta) {
    est.l = l;
    est.j = j;
  }
  est.region = region;
  est.samples = options.samples;
  if (m == 1) {
    est.value = in.combinatorial * a.mean();
    est.standard_error = in.combinatorial * std::sqrt(a.variance_of_mean());
    return est;
  }
  const double volume = std::pow(unit_ball_volume(d), static_cast<double>(m - 1));
  const double scale = in.combinatorial * volume;
  est.value = scale * a.mean() * b.mean();
  // Delta method for the product of two independent means.
  est.standard_error = scale * std::sqrt(b.mean() * b.mean() * a.variance_of_mean() +
                                         a.mean() * a.mean() * b.variance_of_mean());
  return est;
}

double log_retention(std::span<const double> log_rho, int k, int l, int j) {
  double total = 0.0;
  for (int i = 1; i <= std::max(k, l); ++i) {
    const std::int64_t e = retention_exponent(k, l, j, i);
    if (e == 0) continue;
    if (static_cast<std::size_t>(i) > log_rho.size()) {
      throw ConfigError("retention probability p_" + std::to_string(i) + " is required");
    }
    if (log_rho[i - 1] == kNegInf) return kNegInf;
    total += static_cast<double>(e) * log_rho[i - 1];
  }
  return total;
}

std::vector<double> logs_of(const RhoVector& rho) {
  std::vector<double> out;
  for (double p : rho.values()) out.push_back(p > 0.0 ? std::log(p) : kNegInf);
  return out;
}

// ln( n^{k+l+2-j} r^{d(k+l+1-j)} prod p_i^{e_i} )
double log_pair_scale(double n, double r, std::size_t d, std::span<const double> log_rho, int k,
                      int l, int j) {
  const double lr = log_retention(log_rho, k, l, j);
  if (lr == kNegInf) return kNegInf;
  return (k + l + 2 - j) * std::log(n) + static_cast<double>(d) * (k + l + 1 - j) * std::log(r) +
         lr;
}

const ConstantEstimate& require(const ConstantTable& table, ConstantKind kind, int k,
                                std::optional<int> l = std::nullopt,
                                std::optional<int> j = std::nullopt) {
  const ConstantEstimate* e = table.find(kind, k, l, j);
  if (!e) {
    static const char* names[] = {"mu", "nu", "phi", "theta"};
    std::string what = std::string("missing constant ") + names[static_cast<int>(kind)] +
                       " k=" + std::to_string(k);
    if (l) what += " l=" + std::to_string(*l);
    if (j) what += " j=" + std::to_string(*j);
    throw ConfigError(what);
  }
  return *e;
}

}  // namespace

std::int64_t binomial(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::int64_t result = 1;
  for (int t = 1; t <= b; ++t) result = result * (a - b + t) / t;
  return result;
}

std::int64_t retention_exponent(int k, int l, int j, int i) {
  if (k < 0 || l < 0 || j < 0 || i < 0) throw InputError("retention_exponent: negative argument");
  if (j > std::min(k, l) + 1) throw InputError("retention_exponent: j exceeds min(k,l)+1");
  if (i < 1 || i > std::max(k, l)) throw InputError("retention_exponent: i outside 1..max(k,l)");
  return binomial(k + 1, i + 1) + binomial(l + 1, i + 1) - binomial(j, i + 1);
}

double unit_ball_volume(std::size_t d) {
  const double h = 0.5 * static_cast<double>(d);
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

ConstantEstimate estimate_mu(int k, const Density& density, const Region& region,
                             const MonteCarloOptions& options) {
  return estimate(ConstantKind::mu, k, 0, 0, density, region, options);
}

ConstantEstimate estimate_nu(int k, const Density& density, const Region& region,
                             const MonteCarloOptions& options) {
  return estimate(ConstantKind::nu, k, 0, 0, density, region, options);
}

ConstantEstimate estimate_phi(int k, int l, int j, const Density& density, const Region& region,
                              const MonteCarloOptions& options) {
  return estimate(ConstantKind::phi, k, l, j, density, region, options);
}

ConstantEstimate estimate_theta(int k, int l, int j, const Density& density, const Region& region,
                                const MonteCarloOptions& options) {
  return estimate(ConstantKind::theta, k, l, j, density, region, options);
}

void ConstantTable::insert(ConstantEstimate estimate) {
  for (auto& e : entries_) {
    if (e.kind == estimate.kind && e.k == estimate.k && e.l == estimate.l && e.j == estimate.j) {
      e = std::move(estimate);
      return;
    }
  }
  entries_.push_back(std::move(estimate));
}

const ConstantEstimate* ConstantTable::find(ConstantKind kind, int k, std::optional<int> l,
                                            std::optional<int> j) const {
  for (const auto& e : entries_) {
    if (e.kind != kind || e.j != j) continue;
    if (e.k == k && e.l == l) return &e;
    if (l && e.l && e.k == *l && *e.l == k) return &e;
  }
  return nullptr;
}

ConstantTable estimate_required_constants(Flavor flavor, int k, std::optional<int> l,
                                          const Density& density, const Region& region,
                                          const MonteCarloOptions& options) {
  const bool rips = flavor == Flavor::rips;
  ConstantTable table;
  MonteCarloOptions opt = options;
  opt.seed = derive_seed(options.seed, 0);
  table.insert(rips ? estimate_mu(k, density, region, opt) : estimate_nu(k, density, region, opt));
  if (l) {
    for (int j = 1; j <= std::min(k, *l) + 1; ++j) {
      opt.seed = derive_seed(options.seed, static_cast<std::uint64_t>(j));
      table.insert(rips ? estimate_phi(k, *l, j, density, region, opt)
                        : estimate_theta(k, *l, j, density, region, opt));
    }
  }
  return table;
}

MomentPrediction predicted_moments(double n, double r, std::size_t d, const RhoVector& rho, int k,
                                   std::optional<int> l, Flavor flavor,
                                   const ConstantTable& constants) {
  if (!(n > 0.0) || !(r > 0.0)) throw InputError("predicted_moments needs n > 0 and r > 0");
  if (k < 0 || (l && *l < 0)) throw InputError("face dimensions must be nonnegative");
  const bool rips = flavor == Flavor::rips;
  const auto log_rho = logs_of(rho);
  const ConstantKind single = rips ? ConstantKind::mu : ConstantKind::nu;
  const ConstantKind pair = rips ? ConstantKind::phi : ConstantKind::theta;

  MomentPrediction out;
  const double c = require(constants, single, k).value;
  // E f_k ~ var f_k ~ c prod p_i^{C(k+1,i+1)} n^{k+1} r^{dk}: the j = k+1 term of the pair sum.
  const double lead = log_pair_scale(n, r, d, log_rho, k, k, k + 1);
  out.mean = lead == kNegInf ? 0.0 : c * std::exp(lead);
  out.variance = out.mean;

  auto pair_sum = [&](int a, int b) -> std::optional<double> {
    double total = 0.0;
    for (int j = 1; j <= std::min(a, b) + 1; ++j) {
      const ConstantEstimate* e = constants.find(pair, a, b, j);
      if (!e) return std::nullopt;
      const double s = log_pair_scale(n, r, d, log_rho, a, b, j);
      if (s != kNegInf) total += e->value * std::exp(s);
    }
    return total;
  };
  if (l) {
    out.covariance = pair_sum(k, *l);
    if (!out.covariance) {
      const int top = std::min(k, *l) + 1;
      for (int j = 1; j <= top; ++j) require(constants, pair, k, *l, j);
    }
  }
  out.variance_full = pair_sum(k, k);
  return out;
}

double log_growth_quantity(double n, double r, std::size_t d, std::span<const double> log_rho,
                           int k) {
  if (k < 0) throw InputError("growth quantity needs k >= 0");
  return log_pair_scale(n, r, d, log_rho, k, k, k + 1);
}

RegimeReport regime_check(double n, double r, std::size_t d, std::span<const double> log_rho,
                          RegimeMode mode, int order, const RegimeThresholds& thresholds) {
  if (!(n > 0.0) || !(r > 0.0) || d == 0) throw InputError("regime_check needs n, r, d > 0");
  if (order < 0) throw InputError("regime_check needs a nonnegative order");
  RegimeReport rep;
  rep.n = n;
  rep.r = r;
  rep.d = d;
  rep.log_rho.assign(log_rho.begin(), log_rho.end());
  rep.mode = mode;
  rep.order = order;
  rep.thresholds = thresholds;
  rep.log_nrd = std::log(n) + static_cast<double>(d) * std::log(r);
  rep.nrd = std::exp(rep.log_nrd);
  rep.log_growth = log_growth_quantity(n, r, d, log_rho, order);
  rep.growth = std::exp(rep.log_growth);
  rep.sparse_ok = rep.log_nrd < std::log(thresholds.sparse);
  rep.growth_ok = rep.log_growth > std::log(thresholds.growth);
  rep.ok = rep.sparse_ok && rep.growth_ok;
  if (mode == RegimeMode::euler) {
    rep.log_vanishing = log_growth_quantity(n, r, d, log_rho, order + 1);
    rep.vanishing = std::exp(*rep.log_vanishing);
    rep.vanishing_ok = *rep.log_vanishing < std::log(thresholds.vanishing);
    rep.ok = rep.ok && *rep.vanishing_ok;
  }
  return rep;
}

RegimeReport regime_check(double n, double r, std::size_t d, const RhoVector& rho,
                          RegimeMode mode, int order, const RegimeThresholds& thresholds) {
  return regime_check(n, r, d, logs_of(rho), mode, order, thresholds);
}

}  // namespace softplex
