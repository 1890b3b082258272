#include <doctest.h>

#include <cmath>

#include "gtsim/errors.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/spectral.hpp"
#include "oracles.hpp"

using namespace gt;

TEST_CASE("frequency box data") {
  auto g = Grid::line(1024, 2 * oracle::pi);
  InflationParams p;
  p.N = 64;
  p.A = 16;
  p.R = 3.0;
  auto box = freq_box_data(g, p);
  CHECK(box.a_modes == 16);
  CHECK(box.N_eff == doctest::Approx(64));
  CHECK(mass(box.field) == doctest::Approx(2 * 9.0 * box.A_eff).epsilon(1e-12));
  auto spec = continuous_spectrum(box.field);
  std::size_t nonzero = 0;
  for (auto v : spec) {
    const bool zero = std::abs(v) < 1e-12;
    const bool r = std::abs(v - 3.0) < 1e-11;
    CHECK((zero || r));
    nonzero += r ? 1 : 0;
  }
  CHECK(nonzero == 32);
  p.A = 0.5;
  CHECK_THROWS_AS(freq_box_data(g, p), ConfigError);
  p.A = 100;
  CHECK_THROWS_AS(freq_box_data(g, p), ConfigError);
  p.A = 16;
  p.N = 300;
  CHECK_THROWS_AS(freq_box_data(g, p), ConfigError);
}

TEST_CASE("box data H^s follows N^s R A^{1/2}") {
  for (double N : {64.0, 128.0, 256.0}) {
    auto g = Grid::line(2048, 2 * oracle::pi);
    InflationParams p;
    p.N = N;
    p.A = N / 4;
    p.R = 1.0;
    auto box = freq_box_data(g, p);
    // direct lattice sum of <xi>^{2s} R^2 over the two boxes
    double sum = 0.0;
    for (long k = box.n_mode; k < box.n_mode + box.a_modes; ++k) {
      sum += std::pow(1.0 + k * k, -2.0);
    }
    for (long k = 2 * box.n_mode; k < 2 * box.n_mode + box.a_modes; ++k) sum += std::pow(1.0 + k * k, -2.0);
    const double hs = sobolev_norm(box.field, {-2.0, false});
    CHECK(hs == doctest::Approx(std::sqrt(sum)).epsilon(1e-10));
    const double model = std::pow(N, -2.0) * std::sqrt(box.A_eff);
    CHECK(std::abs(hs / model - 1.0) < 0.25);
  }
}

TEST_CASE("annulus bump") {
  CHECK(annulus_profile(1.0) == 1.0);
  CHECK(annulus_profile(0.2) == 0.0);
  CHECK(annulus_profile(4.5) == 0.0);
  CHECK(annulus_profile(3.0) > 0.0);
  CHECK(annulus_profile(3.0) < 1.0);
  // smoothness: fourth differences shrink like h^4 near the plateau edges
  for (double edge : {0.5, 2.0, 0.25, 4.0}) {
    double prev = 0.0;
    for (double h : {1e-2, 5e-3}) {
      double d4 = 0.0;
      for (int j = -20; j <= 20; ++j) {
        const double r = edge + j * h / 4;
        const double f = annulus_profile(r - 2 * h) - 4 * annulus_profile(r - h) + 6 * annulus_profile(r) -
                         4 * annulus_profile(r + h) + annulus_profile(r + 2 * h);
        d4 = std::max(d4, std::abs(f) / std::pow(h, 4));
      }
      if (prev > 0.0) CHECK(d4 < 2.0 * prev + 1.0);
      prev = d4;
    }
  }
  auto g = Grid::line(4096, 2 * oracle::pi / 0.25);
  std::vector<double> r0, r1;
  for (double N : {16.0, 32.0, 64.0}) {
    const double n = N * g.dxi(0);
    auto psi = annulus_bump(g, n, 0.5);
    r0.push_back(sobolev_norm(psi, {0.0, false}) / std::pow(n, 0.5));
    r1.push_back(sobolev_norm(psi, {1.0, false}) / std::pow(n, 1.5));
    auto sp = continuous_spectrum(psi);
    auto sp2 = continuous_spectrum(annulus_bump(g, n, 3.0));
    for (std::size_t i = 0; i < sp.size(); ++i) {
      const double xi = std::sqrt(g.xi_squared()[i]);
      if (xi < n / 4 || xi > 4 * n) CHECK(std::abs(sp[i]) < 1e-12);
      CHECK(std::abs(std::abs(sp[i]) - std::abs(sp2[i])) < 1e-12);
    }
  }
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(std::abs(r0[i] / r0[0] - 1.0) < 0.05);
    CHECK(std::abs(r1[i] / r1[0] - 1.0) < 0.05);
  }
  CHECK_THROWS_AS(annulus_bump(g, 1000.0, 1.0), ConfigError);
}

TEST_CASE("gaussian data") {
  auto g = Grid::line(256, 48.0);
  GaussianParams gp{1.7, 1.0};
  auto u = gaussian_data(g, gp);
  CHECK(std::abs(u[128] - cplx{1.7, 0.0}) < 1e-15);
  CHECK(g.coordinates(0)[128] == 0.0);
  CHECK(std::pow(sobolev_norm(u, {1.0, true}), 2) == doctest::Approx(oracle::gaussian_h1_sq(1.7, 1.0)).epsilon(1e-6));
  CHECK(moment_variance(u).value == doctest::Approx(oracle::gaussian_variance(1.7, 1.0)).epsilon(1e-6));
  CHECK_THROWS_AS(gaussian_data(g, {1.0, 0.5}), ConfigError);
  CHECK_THROWS_AS(gaussian_data(g, {1.0, 1.3}), ConfigError);
}

TEST_CASE("rescalings and critical regularities") {
  auto cr = critical_regularities(1, 2);
  CHECK(cr.first == doctest::Approx(-0.5));
  CHECK(cr.second == doctest::Approx(-1.5));
  auto c2 = critical_regularities(2, 2);
  CHECK(c2.first == doctest::Approx(0.0));
  CHECK(c2.second == doctest::Approx(-1.0));
  auto c3 = critical_regularities(3, 8);
  CHECK(c3.first == doctest::Approx(1.25));
  CHECK(c3.second == doctest::Approx(1.0));

  auto g = Grid::line(256, 48.0);
  auto u0 = gaussian_data(g, {1.0, 1.0});
  // zero-mean datum so negative homogeneous norms are defined
  auto u = gradient(u0)[0];
  CHECK(l2_distance(rescale_monomial(u, 1, 2), u) == 0.0);
  for (int p : {2, 4}) {
    const auto [sm, si] = critical_regularities(1, p);
    for (int lam : {2, 4}) {
      auto vm = rescale_monomial(u, lam, p);
      CHECK(mass(vm) == doctest::Approx(std::pow(lam, 1.0 - 4.0 / p) * mass(u)).epsilon(1e-10));
      CHECK(sobolev_norm(vm, {sm, true}) == doctest::Approx(sobolev_norm(u, {sm, true})).epsilon(1e-8));
      auto vi = rescale_integrated(u, lam, p);
      CHECK(sobolev_norm(vi, {si, true}) == doctest::Approx(sobolev_norm(u, {si, true})).epsilon(1e-8));
      CHECK(sobolev_norm(vi, {0.5, true}) ==
            doctest::Approx(std::pow(lam, si - 0.5) * sobolev_norm(u, {0.5, true})).epsilon(1e-8));
      auto wi = rescale_integrated(u0, lam, p);
      CHECK(std::abs(wi[wi.size() / 2]) == doctest::Approx(std::pow(lam, -4.0 / p)).epsilon(1e-12));
    }
  }
}
