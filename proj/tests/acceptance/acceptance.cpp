// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Usage: acceptance [criterion ...]; no argument runs all.
// Prints one PASS/FAIL line per criterion; exit status is nonzero if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "softplex/complex.hpp"
#include "softplex/constants.hpp"
#include "softplex/experiment.hpp"
#include "softplex/geometry.hpp"
#include "softplex/miniball.hpp"
#include "softplex/rng.hpp"
#include "softplex/stats.hpp"

using namespace softplex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [miss]");
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double ks_gate(std::size_t R) { return 1.5 * 1.63 / std::sqrt(static_cast<double>(R)); }

ExperimentConfig line_config(double n, std::size_t reps, std::uint64_t seed) {
  ExperimentConfig c;
  c.n = n;
  c.density = Density::unit_cube(1);
  c.r = RadiusRule::power(1.1);
  c.k_max = 1;
  c.replications = reps;
  c.master_seed = seed;
  c.statistic = Statistic::fk(1);
  c.constants_samples = 100000;
  return c;
}

MonteCarloOptions mc(std::uint64_t samples, std::uint64_t seed) {
  MonteCarloOptions o;
  o.samples = samples;
  o.seed = seed;
  o.threads = 1;
  return o;
}

double mu2_line() { return estimate_mu(1, Density::unit_cube(1), Region::all(), mc(100000, 1)).value; }

Outcome c01() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = estimate_mu(1, Density::unit_cube(1), Region::all(), mc(10'000'000, 101));
  const double t = seconds_since(t0);
  o.check(std::abs(e.value - 1.0) <= 3.0 * e.standard_error + 1e-12,
          fmt("mu_2 = %.6f (target 1, stderr %.2e)", e.value, e.standard_error));
  o.check(e.standard_error < 0.002, "stderr < 0.002");
  o.check(t < 30.0, fmt("%.2f s single-threaded", t));
  return o;
}

Outcome c02() {
  Outcome o;
  const auto e = estimate_mu(1, Density::unit_cube(2), Region::all(), mc(10'000'000, 102));
  const double target = std::numbers::pi / 2.0;
  o.check(std::abs(e.value - target) <= 3.0 * e.standard_error + 1e-12,
          fmt("mu_2 = %.6f (target %.6f, stderr %.2e)", e.value, target, e.standard_error));
  return o;
}

Outcome c03() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t samples = 2'000'000;
  const auto mu2 = estimate_mu(2, Density::unit_cube(2), Region::all(), mc(samples, 31));
  const auto nu2 = estimate_nu(2, Density::unit_cube(2), Region::all(), mc(samples, 32));
  const double se2 = std::hypot(mu2.standard_error, nu2.standard_error);
  o.check(mu2.value - nu2.value > 3.0 * se2,
          fmt("d=2: mu_3 = %.5f, nu_3 = %.5f, joint stderr %.1e", mu2.value, nu2.value, se2));
  const auto mu1 = estimate_mu(2, Density::unit_cube(1), Region::all(), mc(samples, 33));
  const auto nu1 = estimate_nu(2, Density::unit_cube(1), Region::all(), mc(samples, 34));
  const double se1 = std::hypot(mu1.standard_error, nu1.standard_error);
  o.check(std::abs(mu1.value - nu1.value) <= 3.0 * se1,
          fmt("d=1: mu_3 = %.5f, nu_3 = %.5f, joint stderr %.1e", mu1.value, nu1.value, se1));
  const double t = seconds_since(t0);
  o.check(t < 120.0, fmt("%.1f s", t));
  return o;
}

Outcome c04() {
  Outcome o;
  const double h = std::sqrt(3.0) / 2.0;
  auto cloud = std::make_shared<const PointCloud>(
      2, std::vector<double>{0.0, 0.0, 1.0, 0.0, 0.5, h}, Provenance{ProcessKind::binomial, 3.0}, 0);
  const auto full = build_rips(build_graph(cloud, 1.0), 2);
  const RhoVector rho({0.8, 0.5});
  const int reps = 100000;
  int kept = 0;
  for (int s = 0; s < reps; ++s) kept += soft_thin(full, rho, derive_seed(404, s)).face_count(2) > 0;
  const double p = kept / static_cast<double>(reps);
  o.check(full.face_count(2) == 1, "one admissible triangle");
  o.check(std::abs(p - 0.256) <= 0.005, fmt("survival %.4f (target 0.256 +- 0.005)", p));
  return o;
}

Outcome c05() {
  Outcome o;
  const double mu2 = mu2_line();
  for (double n : {1e4, 4e4}) {
    const auto c = line_config(n, 400, 5);
    const auto results = run_experiment(c, 0);
    const auto f1 = statistic_samples(results, c.statistic);
    const double ratio = sample_mean(f1) / (n * n * c.resolved_r()) / mu2;
    o.check(std::abs(ratio - 1.0) < 0.05, fmt("n=%.0f: E f_1/(mu_2 n^2 r) = %.4f", n, ratio));
  }
  return o;
}

Outcome c06() {
  Outcome o;
  const double mu2 = mu2_line();
  for (double n : {1e4, 4e4}) {
    for (double p1 : {1.0, 0.5}) {
      auto c = line_config(n, 2000, 6);
      c.rho = RhoRule{RhoRule::Kind::values, {p1}};
      const auto f1 = statistic_samples(run_experiment(c, 0), c.statistic);
      const double ratio = sample_variance(f1) / (mu2 * p1 * n * n * c.resolved_r());
      o.check(ratio >= 0.85 && ratio <= 1.15, fmt("n=%.0f p_1=%.1f: %.4f", n, p1, ratio));
    }
  }
  return o;
}

Outcome c07() {
  Outcome o;
  auto c = line_config(2.5e5, 2000, 7);
  const auto rep = clt_report(c, run_experiment(c, 0));
  o.check(rep.regime.sparse_ok && rep.regime.growth_ok,
          fmt("n=2.5e5: n r^d = %.3f, growth = %.3g", rep.regime.nrd, rep.regime.growth));
  o.check(rep.ks < ks_gate(2000), fmt("KS %.4f < %.4f", rep.ks, ks_gate(2000)));
  o.check(std::abs(rep.moments.skewness) < 0.15, fmt("skewness %.4f", rep.moments.skewness));
  return o;
}

Outcome c08() {
  Outcome o;
  ExperimentConfig c;
  c.process = ProcessKind::poisson;
  c.n = 1e5;
  c.density = Density::unit_cube(1);
  c.r = RadiusRule::power(1.4);
  c.k_max = 2;
  c.replications = 2000;
  c.master_seed = 8;
  c.statistic = Statistic::chi();
  c.constants_samples = 100000;
  const auto results = run_experiment(c, 0);
  std::size_t zero = 0;
  for (const auto& r : results) zero += r.f[2] == 0;
  const double frac = zero / static_cast<double>(results.size());
  o.check(frac >= 0.99, fmt("f_2 = 0 in %.1f%% of replications", 100.0 * frac));
  const auto rep = clt_report(c, results);
  const double ratio = rep.ratios.chi_ratio.value_or(NAN);
  o.check(ratio >= 0.9 && ratio <= 1.1, fmt("var(chi)/var(f_0) = %.4f", ratio));
  o.check(rep.ks < ks_gate(2000), fmt("KS %.4f < %.4f", rep.ks, ks_gate(2000)));
  return o;
}

Outcome c09() {
  Outcome o;
  double var_ratio[2], cov_ratio[2];
  const double sizes[2] = {1e4, 4e4};
  for (int i = 0; i < 2; ++i) {
    auto c = line_config(sizes[i], 2000, 9);
    // The fixed-n vertex count has zero variance; the ratios need the Poisson process.
    c.process = ProcessKind::poisson;
    const auto ratios = variance_ratio_report(run_experiment(c, 0), 1);
    var_ratio[i] = ratios.variance_ratio[1].value_or(NAN);
    cov_ratio[i] = ratios.covariance_ratio[1][0].value_or(NAN);
  }
  o.check(var_ratio[0] / var_ratio[1] >= 2.0,
          fmt("var(f_1)/var(f_0): %.4f -> %.4f (drop %.3fx)", var_ratio[0], var_ratio[1],
              var_ratio[0] / var_ratio[1]));
  o.check(cov_ratio[0] / cov_ratio[1] >= 2.0,
          fmt("cov(f_1,f_0)/var(f_0): %.4f -> %.4f (drop %.3fx)", cov_ratio[0], cov_ratio[1],
              cov_ratio[0] / cov_ratio[1]));
  return o;
}

Outcome c10() {
  Outcome o;
  auto c = line_config(1e4, 400, 10);
  const auto rep = depoisson_compare(c, 0);
  o.check(std::abs(rep.mean_difference) < 3.0 * rep.joint_stderr,
          fmt("|mean diff| %.2f < 3 x %.2f", std::abs(rep.mean_difference), rep.joint_stderr));
  o.check(rep.binomial.ks < ks_gate(400), fmt("binomial KS %.4f", rep.binomial.ks));
  o.check(rep.poisson.ks < ks_gate(400), fmt("poisson KS %.4f", rep.poisson.ks));
  return o;
}

std::vector<std::vector<std::vector<std::uint32_t>>> complex_tuples(const SimplicialComplex& c) {
  std::vector<std::vector<std::vector<std::uint32_t>>> out(c.k_max() + 1);
  for (std::size_t k = 0; k <= c.k_max(); ++k) {
    for (std::size_t i = 0; i < c.face_count(k); ++i) {
      auto f = c.face(k, i);
      out[k].emplace_back(f.begin(), f.end());
    }
    std::sort(out[k].begin(), out[k].end());
  }
  return out;
}

Outcome c11() {
  Outcome o;
  Rng rng(11);
  int graph_ok = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + i % 3;
    const auto n = 100 + rng.below(1901);
    auto cloud = std::make_shared<const PointCloud>(sample_binomial(n, Density::unit_cube(d), rng.next_u64()));
    const double r = rng.uniform(0.005, 0.2);
    graph_ok += build_graph(cloud, r).edges() == oracle::brute_force_edges(*cloud, r);
  }
  o.check(graph_ok == 50, fmt("grid graph == brute force in %d/50", graph_ok));
  int rips_ok = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + i % 3;
    const auto n = 5 + rng.below(21);
    const std::size_t kmax = 1 + i % 4;
    auto cloud = std::make_shared<const PointCloud>(sample_binomial(n, Density::unit_cube(d), rng.next_u64()));
    const double r = rng.uniform(0.1, 0.8);
    rips_ok += complex_tuples(build_rips(build_graph(cloud, r), kmax)) == oracle::brute_force_rips(*cloud, r, kmax);
  }
  o.check(rips_ok == 50, fmt("rips == subset brute force in %d/50", rips_ok));
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto m = 2 + rng.below(9);
    std::vector<double> xy(2 * m);
    for (double& v : xy) v = rng.uniform(-1.0, 1.0);
    worst = std::max(worst, std::abs(min_enclosing_ball_radius(xy, 2) - oracle::grid_search_ball_radius_2d(xy)));
  }
  o.check(worst < 1e-6, fmt("enclosing ball max deviation %.1e over 200", worst));
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c12() {
  Outcome o;
  std::ofstream("acceptance_c12.json") << R"({"n": 20000, "d": 1, "density": "uniform",
    "r": {"exponent": 1.1}, "kmax": 2, "replications": 40, "master_seed": 12,
    "statistic": {"kind": "fk", "k": 1}})";
  auto run = [](const char* out, int threads) {
    const std::string cmd = std::string(SOFTPLEX_CLI_PATH) +
                            " experiment run --config acceptance_c12.json --out " + out +
                            " --threads " + std::to_string(threads) + " 2>/dev/null";
    return std::system(cmd.c_str()) == 0;
  };
  const bool ran = run("acceptance_c12_t1a.csv", 1) && run("acceptance_c12_t1b.csv", 1) &&
                   run("acceptance_c12_t4.csv", 4);
  o.check(ran, "three CLI runs exit 0");
  const std::string a = slurp("acceptance_c12_t1a.csv");
  o.check(!a.empty() && a == slurp("acceptance_c12_t1b.csv"), "repeat run byte-identical");
  o.check(!a.empty() && a == slurp("acceptance_c12_t4.csv"), "--threads 1 vs 4 byte-identical");
  return o;
}

const std::vector<std::function<Outcome()>> kCriteria = {c01, c02, c03, c04, c05, c06,
                                                          c07, c08, c09, c10, c11, c12};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) ids.push_back(i);
  }
  int failed = 0;
  for (int id : ids) {
    if (id < 1 || id > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = kCriteria[id - 1]();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d %s (%.1f s): %s\n", id, out.pass ? "PASS" : "FAIL", seconds_since(t0),
                out.detail.c_str());
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed ? 1 : 0;
}
