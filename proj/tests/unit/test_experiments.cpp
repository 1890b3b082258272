#include <doctest.h>

#include <cmath>
#include <vector>

#include "gtsim/errors.hpp"
#include "gtsim/experiments.hpp"
#include "gtsim/initial_data.hpp"

using namespace gt;

TEST_CASE("log-log fit") {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
  const auto f = fit_loglog(x, y);
  CHECK(f.exponent == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.stderr_exponent < 1e-10);

  const std::vector<double> x2{1.0, 10.0}, y2{2.0, 0.2};
  const auto f2 = fit_loglog(x2, y2);
  CHECK(f2.exponent == doctest::Approx(-1.0));
  CHECK(std::isnan(f2.stderr_exponent));

  const std::vector<double> bad{1.0, -1.0};
  CHECK_THROWS_AS(fit_loglog(x2, bad), DomainError);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(fit_loglog(one, one), DomainError);
}

TEST_CASE("report verdicts") {
  ExperimentReport r;
  r.id = "demo";
  r.add("a", true, 1.0, 1.0, 0.1);
  r.settle();
  CHECK(r.verdict == Verdict::Pass);
  r.add("b", false, 2.0, 1.0, 0.1);
  r.settle();
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.find("b") != nullptr);
  CHECK_FALSE(r.find("b")->pass);
  CHECK(r.find("zzz") == nullptr);
  r.inconclusive = true;
  r.settle();
  CHECK(r.verdict == Verdict::Inconclusive);
  const auto j = r.to_json();
  CHECK(j["experiment"] == "demo");
  CHECK(j["checks"].size() == 2);
  CHECK(to_string(Verdict::Pass) == "pass");
}

TEST_CASE("spectral tail fraction") {
  const auto g = Grid::line(64, 2.0 * M_PI);
  const std::vector<long> low{3}, high{20};
  CHECK(spectral_tail_fraction(plane_wave(g, 1.0, low)) < 1e-25);
  CHECK(spectral_tail_fraction(plane_wave(g, 1.0, high)) == doctest::Approx(1.0));
}

TEST_CASE("experiment parameter validation") {
  InflationNegSpec neg;
  CHECK_NOTHROW(neg.validate());
  neg.t_fracs = {0.1};
  CHECK_THROWS_AS(neg.validate(), ConfigError);

  SymmetrySpec sym;
  CHECK_NOTHROW(sym.validate());
  sym.rescaling = "affine";
  CHECK_THROWS_AS(sym.validate(), ConfigError);
  sym = SymmetrySpec{};
  sym.lambda_list = {3};
  CHECK_THROWS_AS(sym.validate(), ConfigError);

  EquipartitionSpec eq;
  CHECK_NOTHROW(eq.validate());
  eq.dt = 0.01;
  CHECK_THROWS_AS(eq.validate(), ConfigError);
}

TEST_CASE("analytic growth experiment on a reduced table") {
  AnalyticIPSpec spec;
  spec.n_list = {4.0, 8.0};
  spec.s_list = {-0.5};
  spec.time_samples = 3;
  const auto r = run_analytic_ip(spec);
  REQUIRE(r.find("flat_s=-0.5") != nullptr);
  CHECK(std::isfinite(r.find("flat_s=-0.5")->value));
  REQUIRE(r.find("l2_doubling_N=4") != nullptr);
  CHECK(r.find("l2_doubling_N=4")->pass);
}
