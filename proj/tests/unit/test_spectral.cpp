#include <doctest.h>

#include <cmath>

#include "gtsim/errors.hpp"
#include "gtsim/grid.hpp"
#include "gtsim/spectral.hpp"
#include "oracles.hpp"

using namespace gt;

TEST_CASE("grid construction and lattices") {
  auto g = Grid::line(8, 2.0 * oracle::pi);
  auto lat = g.lattice(0);
  REQUIRE(lat.size() == 8);
  CHECK(lat.front() == doctest::Approx(-4.0));
  CHECK(lat.back() == doctest::Approx(3.0));
  CHECK(Grid::line(16, oracle::pi).dxi(0) == doctest::Approx(2.0));
  const std::size_t n2[] = {8, 16};
  const double L2[] = {2 * oracle::pi, 2 * oracle::pi};
  auto g2 = Grid::make(2, n2, L2);
  CHECK(g2.size() == 128);
  CHECK(g2.lattice(1).size() == 16);
  auto x = g.coordinates(0);
  CHECK(x.front() == doctest::Approx(-oracle::pi));
  CHECK(x.back() == doctest::Approx(oracle::pi - g.dx(0)));
  CHECK_THROWS_AS(Grid::line(12, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid::line(7, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid::line(8, 0.0), ConfigError);
  CHECK_THROWS_AS(Grid::line(8, -1.0), ConfigError);
}

TEST_CASE("free propagator: identity, unitarity, group property, gaussian oracle") {
  auto g = Grid::line(256, 40.0);
  auto u = oracle::random_smooth(g, 7, 0.002);
  CHECK(l2_distance(free_propagate(u, 0.0, 1.0), u) < 1e-14 * l2_norm(u));
  auto v = free_propagate(u, 0.37, 1.0);
  CHECK(std::abs(l2_norm(v) - l2_norm(u)) < 1e-12 * l2_norm(u));
  auto ab = free_propagate(free_propagate(u, 0.2, -1.0), 0.5, -1.0);
  auto c = free_propagate(u, 0.7, -1.0);
  CHECK(l2_distance(ab, c) < 1e-12 * l2_norm(c));
  for (double s : {-1.0, 0.0, 0.5, 2.0}) {
    CHECK(std::abs(sobolev_norm(v, {s, false}) - sobolev_norm(u, {s, false})) <
          1e-12 * sobolev_norm(u, {s, false}));
  }

  const double sig = 1.0, tau = 0.8;
  auto gg = Grid::line(512, 80.0);
  std::vector<cplx> vals(gg.size()), exact(gg.size());
  auto xs = gg.coordinates(0);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    vals[j] = std::exp(-xs[j] * xs[j] / (4 * sig * sig));
    exact[j] = oracle::gaussian_free(xs[j], sig, tau);
  }
  auto out = free_propagate(Field(gg, vals), tau, 1.0);
  Field ex(gg, exact);
  CHECK(l2_distance(out, ex) < 1e-10 * l2_norm(ex));
}

TEST_CASE("sobolev and lebesgue norms") {
  auto g = Grid::line(64, 2.0 * oracle::pi);
  CHECK(sobolev_norm(Field(g), {1.0, false}) == 0.0);
  CHECK(lebesgue_norm(Field(g), 3.0) == 0.0);
  // unit L2 single mode at k = 3
  std::vector<cplx> v(g.size());
  auto xs = g.coordinates(0);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::polar(1.0 / std::sqrt(2 * oracle::pi), 3.0 * xs[j]);
  Field m(g, v);
  CHECK(sobolev_norm(m, {0.0, false}) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sobolev_norm(m, {1.5, false}) == doctest::Approx(std::pow(10.0, 0.75)).epsilon(1e-12));
  CHECK(sobolev_norm(m, {-2.0, true}) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  // constant field
  std::vector<cplx> cv(g.size(), cplx{2.0, 0.0});
  Field cf(g, cv);
  CHECK(lebesgue_norm(cf, 3.0) == doctest::Approx(2.0 * std::pow(2 * oracle::pi, 1.0 / 3.0)));
  CHECK_THROWS_AS(sobolev_norm(cf, {-0.5, true}), DomainError);
  CHECK_NOTHROW(sobolev_norm(m, {-0.5, true}));

  const double A = 1.3, s = 1.1;
  auto gg = Grid::line(512, 80.0);
  std::vector<cplx> gv(gg.size());
  auto gx = gg.coordinates(0);
  for (std::size_t j = 0; j < gv.size(); ++j) gv[j] = A * std::exp(-gx[j] * gx[j] / (4 * s * s));
  Field G(gg, gv);
  CHECK(std::pow(sobolev_norm(G, {0.0, false}), 2) == doctest::Approx(oracle::gaussian_mass(A, s)).epsilon(1e-8));
  CHECK(mass(G) == doctest::Approx(oracle::gaussian_mass(A, s)).epsilon(1e-8));
  CHECK(std::pow(lebesgue_norm(G, 4.0), 4) == doctest::Approx(oracle::gaussian_power(A, s, 4.0)).epsilon(1e-8));
  // Plancherel: physical mass vs coefficient sum
  CHECK(std::abs(mass(G) - std::pow(sobolev_norm(G, {0.0, false}), 2)) < 1e-12 * mass(G));
  CHECK(std::pow(sobolev_norm(G, {1.0, true}), 2) == doctest::Approx(oracle::gaussian_h1_sq(A, s)).epsilon(1e-8));
}

TEST_CASE("gradient") {
  auto g = Grid::line(128, 30.0);
  std::vector<cplx> c(g.size(), cplx{0.5, -1.0});
  auto gr = gradient(Field(g, c));
  CHECK(l2_norm(gr[0]) < 1e-12);
  auto u = oracle::random_smooth(g, 3, 0.01);
  auto du = gradient(u);
  CHECK(l2_norm(du[0]) == doctest::Approx(sobolev_norm(u, {1.0, true})).epsilon(1e-10));
  auto a = gradient(free_propagate(u, 0.3, 1.0))[0];
  auto b = free_propagate(du[0], 0.3, 1.0);
  CHECK(l2_distance(a, b) < 1e-12 * l2_norm(b));
  // single mode
  std::vector<cplx> pw(g.size());
  auto xs = g.coordinates(0);
  const double xi = 5.0 * g.dxi(0);
  for (std::size_t j = 0; j < pw.size(); ++j) pw[j] = std::polar(1.0, xi * xs[j]);
  auto dpw = gradient(Field(g, pw))[0];
  double err = 0.0;
  for (std::size_t j = 0; j < pw.size(); ++j) err = std::max(err, std::abs(dpw[j] - cplx{0.0, xi} * pw[j]));
  CHECK(err < 1e-11);
}

TEST_CASE("moments") {
  const double A = 0.9, s = 1.2;
  auto g = Grid::line(512, 80.0);
  auto xs = g.coordinates(0);
  CHECK(moment_variance(Field(g)).value == 0.0);
  std::vector<cplx> v(g.size()), chirp(g.size()), shifted(g.size());
  const double b = 0.15, D = 1.5;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = xs[j];
    v[j] = A * std::exp(-x * x / (4 * s * s));
    chirp[j] = v[j] * std::polar(1.0, b * x * x);
    shifted[j] = A * std::exp(-(x - D) * (x - D) / (4 * s * s));
  }
  Field G(g, v);
  auto var = moment_variance(G);
  CHECK_FALSE(var.degraded);
  CHECK(var.value == doctest::Approx(oracle::gaussian_variance(A, s)).epsilon(1e-6));
  CHECK(std::abs(radial_momentum(G).value) < 1e-12);
  CHECK(radial_momentum(Field(g, chirp)).value ==
        doctest::Approx(8.0 * b * oracle::gaussian_variance(A, s)).epsilon(1e-6));
  CHECK(moment_variance(Field(g, shifted)).value ==
        doctest::Approx(var.value + D * D * mass(G)).epsilon(1e-8));
  // wide data leaks into the outer shell
  std::vector<cplx> wide(g.size());
  for (std::size_t j = 0; j < v.size(); ++j) wide[j] = std::exp(-xs[j] * xs[j] / 400.0);
  CHECK(moment_variance(Field(g, wide)).degraded);
}
