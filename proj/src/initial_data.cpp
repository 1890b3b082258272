#include "gtsim/initial_data.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gtsim/errors.hpp"
#include "gtsim/spectral.hpp"

namespace gt {

InflationParams InflationParams::from_scaling(double N, double delta, double s) {
  InflationParams p;
  p.N = N;
  p.delta = delta;
  p.s = s;
  p.R = std::pow(N, 1.0 + 3.0 * delta);
  p.A = std::pow(N, 1.0 - delta);
  p.T = std::pow(N, -3.0 - 6.0 * delta);
  return p;
}

bool InflationParams::separated(double dxi) const {
  // relative slack: A = N^{1-delta} lands exactly on N/4 at N = 1024, delta = 0.2
  return A >= 8.0 * dxi * (1.0 - 1e-12) && N >= 4.0 * A * (1.0 - 1e-12);
}

BoxData freq_box_data(const Grid& grid, const InflationParams& params) {
  if (grid.dim() != 1) throw ConfigError("frequency-box data is one-dimensional");
  const double dxi = grid.dxi(0);
  BoxData out;
  out.n_mode = std::lround(params.N / dxi);
  out.a_modes = static_cast<long>(std::floor(params.A / dxi + 1e-9));
  out.R = params.R;
  if (out.a_modes < 1) throw ConfigError("frequency box is empty: A is smaller than the lattice spacing");
  if (out.n_mode < 1) throw ConfigError("frequency box: N must be at least one lattice spacing");
  if (out.n_mode + out.a_modes > 2 * out.n_mode) throw ConfigError("frequency boxes overlap (A > N)");
  const long top = 2 * out.n_mode + out.a_modes - 1;
  if (top >= static_cast<long>(grid.n(0) / 2)) {
    std::ostringstream os;
    os << "frequency boxes exceed the grid bandwidth: highest mode " << top << " >= "
       << grid.n(0) / 2;
    throw ConfigError(os.str());
  }
  out.N_eff = static_cast<double>(out.n_mode) * dxi;
  out.A_eff = static_cast<double>(out.a_modes) * dxi;
  std::vector<cplx> spec(grid.size(), cplx{});
  const auto modes = grid.mode_component(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long k = modes[i];
    const bool low = k >= out.n_mode && k < out.n_mode + out.a_modes;
    const bool high = k >= 2 * out.n_mode && k < 2 * out.n_mode + out.a_modes;
    if (low || high) spec[i] = params.R;
  }
  out.field = from_continuous_spectrum(grid, spec);
  return out;
}

namespace {

double bump_kernel(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// 1 at t <= 0, 0 at t >= 1, flat to all orders at both ends
double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = bump_kernel(1.0 - t);
  return a / (a + bump_kernel(t));
}

double min_axis_nyquist(const Grid& grid) {
  double m = std::numeric_limits<double>::infinity();
  for (int a = 0; a < grid.dim(); ++a) {
    m = std::min(m, std::numbers::pi * static_cast<double>(grid.n(a)) / grid.length(a));
  }
  return m;
}

}  // namespace

double annulus_profile(double r) {
  if (r >= 0.5 && r <= 2.0) return 1.0;
  if (r > 2.0) return smooth_step((r - 2.0) / 2.0);
  return smooth_step((0.5 - r) / 0.25);
}

Field annulus_bump(const Grid& grid, double N, double T) {
  if (!(N > 0.0)) throw ConfigError("annulus bump: N must be positive");
  if (!(4.0 * N < min_axis_nyquist(grid))) {
    throw ConfigError("annulus bump: 4N must lie below the grid bandwidth");
  }
  const double tau = std::min(1.0, T);
  const auto xi2 = grid.xi_squared();
  std::vector<cplx> spec(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double prof = annulus_profile(std::sqrt(xi2[i]) / N);
    spec[i] = prof == 0.0 ? cplx{} : prof * std::polar(1.0, -tau * xi2[i]);
  }
  return from_continuous_spectrum(grid, spec);
}

Field gaussian_data(const Grid& grid, const GaussianParams& params) {
  if (!(params.A > 0.0) || !(params.sigma > 0.0)) {
    throw ConfigError("gaussian data: amplitude and width must be positive");
  }
  for (int a = 0; a < grid.dim(); ++a) {
    if (params.sigma < 4.0 * grid.dx(a)) {
      throw ConfigError("gaussian data: width below 4 grid spacings (under-resolved)");
    }
    const double L = grid.length(a);
    if (!(std::exp(-L * L / (64.0 * params.sigma * params.sigma)) < 1e-12)) {
      throw ConfigError("gaussian data: torus too small for the tails to decay below 1e-12");
    }
  }
  std::vector<cplx> v(grid.size());
  const double inv = 1.0 / (4.0 * params.sigma * params.sigma);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const double x = grid.x_component(a)[i];
      r2 += x * x;
    }
    v[i] = params.A * std::exp(-r2 * inv);
  }
  return Field(grid, std::move(v));
}

Field rescale_spatial(const Field& u, int lambda, double amplitude) {
  if (lambda < 1) throw ConfigError("rescaling factor must be a positive integer");
  const Grid& g = u.grid();
  if (lambda == 1) return amplitude * u;
  const int d = g.dim();
  std::array<std::size_t, kMaxDim> n{1, 1, 1};
  std::array<double, kMaxDim> L{1, 1, 1};
  for (int a = 0; a < d; ++a) {
    n[a] = g.n(a) * static_cast<std::size_t>(lambda);
    L[a] = g.length(a) * lambda;
  }
  const Grid big = Grid::make(d, std::span<const std::size_t>(n.data(), d),
                              std::span<const double>(L.data(), d));
  const auto c = fourier_coefficients(u);
  std::vector<cplx> cb(big.size(), cplx{});
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const long k = g.mode_component(a)[i];
      const long nb = static_cast<long>(n[a]);
      flat = flat * n[a] + static_cast<std::size_t>((k + nb) % nb);
    }
    cb[flat] = amplitude * c[i];
  }
  return from_fourier_coefficients(big, std::move(cb));
}

Field rescale_monomial(const Field& u, int lambda, int p) {
  return rescale_spatial(u, lambda, std::pow(static_cast<double>(lambda), -2.0 / p));
}

Field rescale_integrated(const Field& u, int lambda, int p) {
  return rescale_spatial(u, lambda, std::pow(static_cast<double>(lambda), -4.0 / p));
}

std::pair<double, double> critical_regularities(int d, int p) {
  if (p < 2 || p % 2 != 0) throw ConfigError("p must be even >= 2");
  return {0.5 * d - 2.0 / p, 0.5 * d - 4.0 / p};
}

Field plane_wave(const Grid& grid, cplx a, std::span<const long> modes) {
  if (static_cast<int>(modes.size()) != grid.dim()) throw ConfigError("plane wave: one mode per axis");
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double phase = 0.0;
    for (int ax = 0; ax < grid.dim(); ++ax) {
      phase += grid.dxi(ax) * static_cast<double>(modes[ax]) * grid.x_component(ax)[i];
    }
    v[i] = a * std::polar(1.0, phase);
  }
  return Field(grid, std::move(v));
}

}  // namespace gt
