#include <doctest.h>

#include <cmath>

#include "gtsim/diagnostics.hpp"
#include "gtsim/errors.hpp"
#include "gtsim/evolution.hpp"
#include "gtsim/initial_data.hpp"
#include "oracles.hpp"

using namespace gt;

TEST_CASE("gaussian diagnostics against closed forms") {
  const auto g = Grid::line(512, 80.0);
  for (int p : {2, 8}) {
    GTConfig cfg;
    cfg.p = p;
    cfg.gamma = -1.0;
    const double A = 0.7, s = 1.5;
    const auto u = gaussian_data(g, {A, s});
    const auto r = record(u, 0.0, cfg, {0.0, 1.0});
    CHECK(r.mass == doctest::Approx(oracle::gaussian_mass(A, s)).epsilon(1e-12));
    CHECK(r.gradient_sq == doctest::Approx(oracle::gaussian_h1_sq(A, s)).epsilon(1e-10));
    CHECK(r.variance == doctest::Approx(oracle::gaussian_variance(A, s)).epsilon(1e-10));
    const double U = oracle::gaussian_potential(A, s, p);
    CHECK(r.potential == doctest::Approx(U).epsilon(1e-8));
    CHECK(r.kinetic == doctest::Approx(0.5 * r.gradient_sq).epsilon(1e-12));
    CHECK(r.equip_ratio == doctest::Approx(r.gradient_sq / ((p + 2) * U)).epsilon(1e-8));
    CHECK(std::abs(r.vdot1) < 1e-12);
    REQUIRE(r.hs_norms.size() == 2);
    CHECK(r.hs_norms[0].second == doctest::Approx(std::sqrt(r.mass)).epsilon(1e-12));
    CHECK(r.hs_norms[1].second ==
          doctest::Approx(std::sqrt(r.mass + r.gradient_sq)).epsilon(1e-10));
    CHECK(r.boundary_frac < 1e-20);
  }
}

TEST_CASE("virial constant") {
  CHECK(virial_constant(1, 8) == doctest::Approx(8.0));
  CHECK(virial_constant(3, 2) == doctest::Approx(7.0));
  CHECK(virial_constant(2, 4) == doctest::Approx(8.0));
}

TEST_CASE("virial pieces need the averaged-unit variant") {
  const auto g = Grid::line(256, 64.0);
  GTConfig cfg;
  cfg.variant = Variant::IntegratedInterval;
  cfg.upper = 2.0;
  const auto u = gaussian_data(g, {0.5, 1.0});
  CHECK_THROWS_AS(vdot2(u, cfg), ConfigError);
  CHECK_THROWS_AS(vddot1_rhs(u, cfg), ConfigError);
}

TEST_CASE("virial identities hold along a short backward run") {
  const auto g = Grid::line(256, 64.0);
  for (double gamma : {-1.0, 1.0}) {
    GTConfig cfg;
    cfg.p = 8;
    cfg.gamma = gamma;
    const auto u0 = gaussian_data(g, {0.8, 1.5});
    SolverParams sp;
    sp.dt = -0.005;
    sp.t_final = -0.2;
    sp.capture_every = 1;
    sp.keep_snapshots = false;
    const auto tr = evolve(u0, sp, cfg);
    REQUIRE_FALSE(tr.blowup_suspected);
    const auto ic = check_virial_identities(tr.records, gamma);
    CHECK(ic.points > 10);
    CHECK(ic.variance_rel_error < 1e-3);
    CHECK(ic.momentum_rel_error < 1e-3);
    const auto vr = virial_inequality_check(tr.records, cfg);
    CHECK(vr.focusing == (gamma > 0));
    CHECK(vr.momentum_bound_holds);
  }
}
