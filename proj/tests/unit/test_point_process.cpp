// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "softplex/density.hpp"
#include "softplex/error.hpp"
#include "softplex/point_process.hpp"
#include "softplex/rng.hpp"

using namespace softplex;

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
  Rng a(3), b(3), c(4);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
}

TEST_CASE("face coins depend on seed, dimension and vertices") {
  const std::vector<std::uint32_t> f{1, 2, 3};
  const std::vector<std::uint32_t> g{1, 2, 4};
  const double u = face_uniform(7, 2, f);
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
  CHECK(u == face_uniform(7, 2, f));
  CHECK(u != face_uniform(8, 2, f));
  CHECK(u != face_uniform(7, 2, g));
  CHECK(face_uniform(7, 1, std::span(f).first(2)) != face_uniform(7, 2, std::span(f).first(2)));
}

TEST_CASE("uniform and normal variates have the right moments") {
  Rng rng(11);
  const int n = 200000;
  double su = 0, su2 = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    su2 += u * u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.005));
  CHECK(su2 / n - (su / n) * (su / n) == doctest::Approx(1.0 / 12).epsilon(0.01));
  CHECK(std::abs(sn / n) < 4.0 / std::sqrt(n));
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.015));
}

TEST_CASE("poisson variates match the pmf") {
  for (double lambda : {0.7, 3.0, 29.5, 30.0, 50.0, 400.0}) {
    CAPTURE(lambda);
    Rng rng(static_cast<std::uint64_t>(lambda * 1000));
    const int n = 100000;
    std::vector<double> counts(static_cast<std::size_t>(lambda * 4 + 40), 0.0);
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const auto k = rng.poisson(lambda);
      s += static_cast<double>(k);
      s2 += static_cast<double>(k) * static_cast<double>(k);
      counts[std::min<std::size_t>(k, counts.size() - 1)] += 1.0;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - lambda) < 4.0 * std::sqrt(lambda / n));
    CHECK(var == doctest::Approx(lambda).epsilon(0.03));
    // Chi-square over bins merged until each expects at least 20 draws.
    double chi2 = 0.0, obs = 0.0, expct = 0.0, tail = 1.0;
    int bins = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const double p = k + 1 < counts.size() ? oracle::poisson_pmf(k, lambda) : tail;
      tail -= p;
      obs += counts[k];
      expct += n * p;
      if (expct >= 20.0 && n * tail >= 20.0) {
        chi2 += (obs - expct) * (obs - expct) / expct;
        obs = expct = 0.0;
        ++bins;
      }
    }
    expct += n * std::max(tail, 0.0);
    chi2 += (obs - expct) * (obs - expct) / expct;
    ++bins;
    // 0.999 quantile, Wilson-Hilferty.
    const double dof = bins - 1;
    const double crit = dof * std::pow(1.0 - 2.0 / (9.0 * dof) + 3.0902 * std::sqrt(2.0 / (9.0 * dof)), 3);
    CHECK(chi2 < crit);
  }
  Rng rng(1);
  CHECK(rng.poisson(0.0) == 0);
  CHECK_THROWS_AS(rng.poisson(-1.0), InputError);
}

TEST_CASE("density evaluation") {
  const auto square = Density::unit_cube(2);
  CHECK(square(std::vector<double>{0.5, 0.5}) == 1.0);
  CHECK(square(std::vector<double>{2.0, 2.0}) == 0.0);
  CHECK(square.sup_norm() == 1.0);
  CHECK_THROWS_AS(square(std::vector<double>{0.5}), InputError);

  const auto g = Density::gaussian({0.0}, 1.0);
  CHECK(g(std::vector<double>{0.0}) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-14));
  CHECK(g(std::vector<double>{0.0}) == doctest::Approx(0.39894).epsilon(1e-5));
  CHECK(g.sup_norm() == doctest::Approx(0.3989422804014327));

  const auto box = Density::uniform_box({-1.0, 0.0}, {1.0, 4.0});
  CHECK(box(std::vector<double>{0.0, 1.0}) == doctest::Approx(0.125));

  // Weights are relative; normalization divides by the weighted cell volume.
  const auto pc = Density::piecewise_constant({0.0}, {2.0}, {2}, {1.0, 3.0});
  CHECK(pc(std::vector<double>{0.5}) == doctest::Approx(0.25));
  CHECK(pc(std::vector<double>{1.5}) == doctest::Approx(0.75));
  CHECK(pc(std::vector<double>{2.5}) == 0.0);
  CHECK(pc.sup_norm() == doctest::Approx(0.75));

  CHECK_THROWS(Density::uniform_box({0.0}, {0.0}));
  CHECK_THROWS(Density::gaussian({0.0}, -1.0));
  CHECK_THROWS(Density::piecewise_constant({0.0}, {1.0}, {2}, {1.0}));
  CHECK_THROWS(Density::piecewise_constant({0.0}, {1.0}, {2}, {-1.0, 2.0}));
}

TEST_CASE("binomial sampling") {
  const auto square = Density::unit_cube(2);
  const auto c = sample_binomial(5, square, 7);
  CHECK(c.size() == 5);
  CHECK(c.dimension() == 2);
  CHECK(c.provenance().kind == ProcessKind::binomial);
  CHECK(c.provenance().parameter == 5.0);
  for (double x : c.coords()) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  CHECK(sample_binomial(1, Density::gaussian({0.0}, 1.0), 99).size() == 1);
  CHECK_THROWS_AS(sample_binomial(0, square, 1), InputError);

  const auto line = sample_binomial(100000, Density::unit_cube(1), 3);
  double mean = 0.0;
  for (double x : line.coords()) mean += x;
  mean /= 100000.0;
  CHECK(std::abs(mean - 0.5) < 0.01);
  CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / 100000.0));
}

TEST_CASE("sampling is deterministic") {
  const auto f = Density::gaussian({1.0, -1.0}, 0.5);
  CHECK(sample_binomial(100, f, 42) == sample_binomial(100, f, 42));
  CHECK(!(sample_binomial(100, f, 42) == sample_binomial(100, f, 43)));
  CHECK(sample_poisson(50.0, f, 42) == sample_poisson(50.0, f, 42));
}

TEST_CASE("uniform box passes chi-square on a 4x4 grid") {
  const auto c = sample_binomial(100000, Density::unit_cube(2), 5);
  std::vector<double> counts(16, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto p = c.point(i);
    const auto a = std::min<std::size_t>(3, static_cast<std::size_t>(p[0] * 4));
    const auto b = std::min<std::size_t>(3, static_cast<std::size_t>(p[1] * 4));
    counts[a * 4 + b] += 1.0;
  }
  double chi2 = 0.0;
  const double expected = 100000.0 / 16.0;
  for (double o : counts) chi2 += (o - expected) * (o - expected) / expected;
  CHECK(chi2 < 37.697);  // 0.999 quantile, 15 degrees of freedom
}

TEST_CASE("gaussian and piecewise sampling follow their densities") {
  const auto g = sample_binomial(100000, Density::gaussian({2.0}, 3.0), 8);
  double s = 0, s2 = 0;
  for (double x : g.coords()) {
    s += x;
    s2 += x * x;
  }
  const double mean = s / 1e5;
  CHECK(std::abs(mean - 2.0) < 4.0 * 3.0 / std::sqrt(1e5));
  CHECK(s2 / 1e5 - mean * mean == doctest::Approx(9.0).epsilon(0.02));

  const auto pc = sample_binomial(100000, Density::piecewise_constant({0.0, 0.0}, {1.0, 1.0}, {2, 2},
                                                                    {1.0, 2.0, 3.0, 4.0}),
                                  9);
  std::vector<double> counts(4, 0.0);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const auto p = pc.point(i);
    counts[(p[0] < 0.5 ? 0 : 2) + (p[1] < 0.5 ? 0 : 1)] += 1.0;
  }
  double chi2 = 0.0;
  for (int c = 0; c < 4; ++c) {
    const double e = 1e5 * (c + 1) / 10.0;
    chi2 += (counts[c] - e) * (counts[c] - e) / e;
  }
  CHECK(chi2 < 16.266);  // 0.999 quantile, 3 degrees of freedom
}

TEST_CASE("poisson process: empty with probability exp(-lambda)") {
  const double lambda = 1e-4;
  int empty = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    if (sample_poisson(lambda, Density::unit_cube(1), seed).empty()) ++empty;
  }
  CHECK(std::abs(empty / 1e4 - std::exp(-lambda)) < 0.01);
  CHECK_THROWS_AS(sample_poisson(0.0, Density::unit_cube(1), 1), InputError);
}

TEST_CASE("poisson process: count moments and sub-box restriction") {
  const std::size_t reps = 2000;
  double s = 0, s2 = 0, b = 0, b2 = 0;
  for (std::size_t i = 0; i < reps; ++i) {
    const auto c = sample_poisson(50.0, Density::unit_cube(2), derive_seed(77, i));
    CHECK(c.provenance().kind == ProcessKind::poisson);
    const double n = static_cast<double>(c.size());
    s += n;
    s2 += n * n;
    const auto big = sample_poisson(200.0, Density::unit_cube(2), derive_seed(78, i));
    double inside = 0;
    for (std::size_t p = 0; p < big.size(); ++p) {
      if (big.point(p)[0] < 0.5 && big.point(p)[1] < 0.5) inside += 1.0;
    }
    b += inside;
    b2 += inside * inside;
  }
  const double R = static_cast<double>(reps);
  CHECK(std::abs(s / R - 50.0) < 3.0 * std::sqrt(50.0 / R));
  const double mean_b = b / R;
  const double var_b = (b2 - R * mean_b * mean_b) / (R - 1);
  CHECK(std::abs(mean_b - 50.0) < 3.0 * std::sqrt(50.0 / R));
  // sd of a sample variance of Poisson(m): sqrt((2m^2 + m)/R)
  CHECK(std::abs(var_b - 50.0) < 3.0 * std::sqrt((2 * 2500.0 + 50.0) / R));
}
