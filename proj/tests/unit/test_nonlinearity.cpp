#include <doctest.h>

#include "gtsim/errors.hpp"
#include "gtsim/nonlinearity.hpp"
#include "gtsim/spectral.hpp"
#include "oracles.hpp"

using namespace gt;

TEST_CASE("sigma quadrature") {
  auto q = SigmaQuadrature::for_bandwidth(1.0, 100.0, 1.0);
  CHECK(q.size() == SigmaQuadrature::required_nodes(1.0, 100.0));
  CHECK(q.size() == 4 * 32);
  CHECK(std::abs(q.weight_sum() - 1.0) < 1e-12);
  CHECK_NOTHROW(q.validate());
  CHECK(SigmaQuadrature::required_nodes(1.0, 1.0) == 8);
  auto q2 = SigmaQuadrature::for_bandwidth(4.0, 10.0, 4.0);
  CHECK(q2.weight_sum() == doctest::Approx(4.0));
  CHECK(q2.nodes.back() < 4.0);
  CHECK_THROWS_AS(SigmaQuadrature::from_table({0.5, 0.2}, {0.5, 0.5}, 1.0), ConfigError);
  CHECK_THROWS_AS(SigmaQuadrature::from_table({0.5}, {-1.0}, 1.0), ConfigError);
  // Gauss-Legendre exactness on a polynomial
  auto gl = gauss_legendre(5);
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 8);
  CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("config validation") {
  GTConfig c;
  c.p = 3;
  CHECK_THROWS_WITH_AS(c.validate(), "p must be even >= 2", ConfigError);
  c.p = 2;
  c.gamma = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.gamma = 1.0;
  CHECK_NOTHROW(c.validate());
  // default-built rule for a coarse grid cannot serve a finer one
  c.sigma_quad = SigmaQuadrature::for_bandwidth(1.0, Grid::line(16, 10.0).xi_max_sq(), 1.0);
  auto fine = Grid::line(256, 10.0);
  try {
    c.quadrature_for(fine);
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("required") != std::string::npos);
  }
}

namespace {

Field two_mode(const Grid& g) {
  std::vector<cplx> v(g.size());
  auto xs = g.coordinates(0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = cplx{0.7, 0.1} * std::polar(1.0, 2.0 * g.dxi(0) * xs[j]) + 0.4 * std::polar(1.0, -5.0 * g.dxi(0) * xs[j]);
  }
  return Field(g, v);
}

}  // namespace

TEST_CASE("nonlinearity examples and properties") {
  auto g = Grid::line(32, 2 * oracle::pi);
  GTConfig cfg;
  for (int p : {2, 4}) {
    cfg.p = p;
    CHECK(l2_norm(gt_nonlinearity(Field(g), cfg)) == 0.0);
    const cplx a{0.6, -0.3};
    std::vector<cplx> v(g.size());
    auto xs = g.coordinates(0);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * std::polar(1.0, 3.0 * xs[j]);
    Field pw(g, v);
    auto n = gt_nonlinearity(pw, cfg);
    CHECK(l2_distance(n, std::pow(std::abs(a), p) * pw) < 1e-13);
    const double L = g.length(0);
    CHECK(potential_energy(pw, cfg) == doctest::Approx(std::pow(std::abs(a), p + 2) * L / (p + 2)).epsilon(1e-12));
    cfg.gamma = -1.0;
    CHECK(energy(pw, cfg) ==
          doctest::Approx(9.0 * std::norm(a) / 2 * L + std::pow(std::abs(a), p + 2) * L / (p + 2)).epsilon(1e-12));
  }
  cfg.p = 2;
  auto u = two_mode(g);
  auto base = gt_nonlinearity(u, cfg);
  GTConfig ref = cfg;
  ref.sigma_quad = SigmaQuadrature::composite(1.0, 10 * cfg.quadrature_for(g).size(), 4, 1.0);
  CHECK(l2_distance(base, gt_nonlinearity(u, ref)) < 1e-8 * l2_norm(base));
  // homogeneity and phase equivariance
  const cplx alpha{0.8, 1.1};
  CHECK(l2_norm(gt_nonlinearity(alpha * u, cfg)) ==
        doctest::Approx(std::pow(std::abs(alpha), 3) * l2_norm(base)).epsilon(1e-12));
  const cplx ph = std::polar(1.0, 0.77);
  CHECK(l2_distance(gt_nonlinearity(ph * u, cfg), ph * base) < 1e-12 * l2_norm(base));
  // variants coincide at Lambda = 1
  GTConfig av = cfg;
  av.variant = Variant::AveragedInterval;
  av.upper = 1.0;
  CHECK(l2_distance(gt_nonlinearity(u, av), base) < 1e-12 * l2_norm(base));
}

TEST_CASE("dealiasing matches a direct modal sum") {
  // cubic case: e^{-i s Lap}[|v|^2 v] has closed modal form for a few modes
  auto g = Grid::line(16, 2 * oracle::pi);
  GTConfig cfg;
  cfg.p = 2;
  cfg.sigma_quad = SigmaQuadrature::from_table({0.3}, {1.0}, 1.0);
  std::vector<long> ks = {-7, -2, 4, 6};
  std::vector<cplx> amp = {{0.3, 0.1}, {0.5, 0.0}, {-0.2, 0.4}, {0.1, -0.3}};
  std::vector<cplx> v(g.size());
  auto xs = g.coordinates(0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t m = 0; m < ks.size(); ++m) v[j] += amp[m] * std::polar(1.0, static_cast<double>(ks[m]) * (xs[j] + oracle::pi));
  }
  auto out = fourier_coefficients(gt_nonlinearity(Field(g, v), cfg));
  // modal oracle: sum over k1 - k2 + k3 = k of phases e^{i s (k^2 - k1^2 + k2^2 - k3^2)}
  const double s = 0.3;
  std::vector<cplx> expect(g.size());
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        const long k = ks[a] - ks[b] + ks[c];
        if (k < -8 || k > 7) continue;
        const double phi = static_cast<double>(k * k - ks[a] * ks[a] + ks[b] * ks[b] - ks[c] * ks[c]);
        expect[static_cast<std::size_t>((k + 16) % 16)] += amp[a] * std::conj(amp[b]) * amp[c] * std::polar(1.0, s * phi);
      }
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(out[i] - expect[i]));
  CHECK(err < 1e-14);
}

TEST_CASE("gaussian potential energy converges under sigma refinement") {
  auto g = Grid::line(128, 40.0);
  std::vector<cplx> v(g.size());
  auto xs = g.coordinates(0);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.8 * std::exp(-xs[j] * xs[j] / 4.0);
  Field G(g, v);
  GTConfig cfg;
  const double base = potential_energy(G, cfg);
  GTConfig ref = cfg;
  ref.sigma_quad = SigmaQuadrature::composite(1.0, 10 * cfg.quadrature_for(g).size() / 4, 4, 1.0);
  CHECK(base == doctest::Approx(potential_energy(G, ref)).epsilon(1e-8));
  cfg.gamma = -1.0;
  CHECK(energy(G, cfg) == doctest::Approx(0.5 * oracle::gaussian_h1_sq(0.8, 1.0) + base).epsilon(1e-8));
}
