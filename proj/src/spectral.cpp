#include "gtsim/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gtsim/errors.hpp"
#include "gtsim/fft.hpp"

namespace gt {

namespace {

std::span<const std::size_t> shape_of(const Grid& g, std::array<std::size_t, kMaxDim>& buf) {
  buf = g.shape();
  return std::span<const std::size_t>(buf.data(), static_cast<std::size_t>(g.dim()));
}

double volume(const Grid& g) {
  double v = 1.0;
  for (int a = 0; a < g.dim(); ++a) v *= g.length(a);
  return v;
}

}  // namespace

std::vector<cplx> fourier_coefficients(const Field& u) {
  std::vector<cplx> c(u.values().begin(), u.values().end());
  std::array<std::size_t, kMaxDim> buf{};
  fft::forward(c, shape_of(u.grid(), buf));
  const double inv = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= inv;
  return c;
}

Field from_fourier_coefficients(const Grid& grid, std::vector<cplx> coeffs) {
  std::array<std::size_t, kMaxDim> buf{};
  fft::backward(coeffs, shape_of(grid, buf));
  return Field(grid, std::move(coeffs));
}

cplx coefficient_to_spectrum_factor(const Grid& grid, std::size_t index) {
  // u_hat(xi_k) = prod_i dx_i / sqrt(2 pi) * (-1)^{k_i} * DFT_k, DFT = N c_k
  double f = static_cast<double>(grid.size());
  long parity = 0;
  for (int a = 0; a < grid.dim(); ++a) {
    f *= grid.dx(a) / std::sqrt(2.0 * std::numbers::pi);
    parity += grid.mode_component(a)[index];
  }
  return (parity % 2 == 0) ? cplx{f, 0.0} : cplx{-f, 0.0};
}

std::vector<cplx> continuous_spectrum(const Field& u) {
  auto c = fourier_coefficients(u);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= coefficient_to_spectrum_factor(u.grid(), i);
  return c;
}

Field from_continuous_spectrum(const Grid& grid, std::span<const cplx> spectrum) {
  if (spectrum.size() != grid.size()) throw DomainError("spectrum: size does not match the grid");
  std::vector<cplx> c(spectrum.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = spectrum[i] / coefficient_to_spectrum_factor(grid, i);
  return from_fourier_coefficients(grid, std::move(c));
}

void apply_free_propagator(const Grid& grid, std::span<cplx> coeffs, double tau, double c) {
  if (tau == 0.0 || c == 0.0) return;
  const auto xi2 = grid.xi_squared();
  const double a = -c * tau;
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= std::polar(1.0, a * xi2[i]);
}

Field free_propagate(const Field& u, double tau, double c) {
  auto coeffs = fourier_coefficients(u);
  apply_free_propagator(u.grid(), coeffs, tau, c);
  return from_fourier_coefficients(u.grid(), std::move(coeffs));
}

double sobolev_norm_from_coefficients(const Grid& grid, std::span<const cplx> coeffs,
                                      SobolevIndex idx) {
  const auto xi2 = grid.xi_squared();
  double total = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double m = std::norm(coeffs[i]);
    total += m;
    if (idx.homogeneous) {
      if (xi2[i] == 0.0) {
        if (idx.s == 0.0) sum += m;
        continue;
      }
      sum += std::pow(xi2[i], idx.s) * m;
    } else {
      sum += std::pow(1.0 + xi2[i], idx.s) * m;
    }
  }
  if (idx.homogeneous && idx.s < 0.0 && total > 0.0) {
    const double zero = std::norm(coeffs[0]);
    if (zero > kZeroModeThreshold * total) {
      std::ostringstream os;
      os << "homogeneous Sobolev norm with s = " << idx.s
         << " diverges: zero Fourier mode carries relative mass " << zero / total;
      throw DomainError(os.str());
    }
  }
  return std::sqrt(volume(grid) * sum);
}

double sobolev_norm(const Field& u, SobolevIndex idx) {
  const auto c = fourier_coefficients(u);
  return sobolev_norm_from_coefficients(u.grid(), c, idx);
}

double lebesgue_norm(const Field& u, double q) {
  if (!(q >= 1.0)) throw DomainError("lebesgue_norm: q must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& v : u.values()) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (const auto& v : u.values()) sum += std::pow(std::abs(v), q);
  return std::pow(sum * u.grid().cell_volume(), 1.0 / q);
}

double mass(const Field& u) {
  double sum = 0.0;
  for (const auto& v : u.values()) sum += std::norm(v);
  return sum * u.grid().cell_volume();
}

double l2_norm(const Field& u) { return std::sqrt(mass(u)); }

double l2_distance(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw DomainError("l2_distance: grid mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum * a.grid().cell_volume());
}

std::vector<Field> gradient(const Field& u) {
  const auto c = fourier_coefficients(u);
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(u.grid().dim()));
  for (int a = 0; a < u.grid().dim(); ++a) {
    const auto xi = u.grid().xi_component(a);
    std::vector<cplx> d(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = cplx{0.0, xi[i]} * c[i];
    out.push_back(from_fourier_coefficients(u.grid(), std::move(d)));
  }
  return out;
}

double boundary_mass_fraction(const Field& u) {
  const auto& g = u.grid();
  double outer = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m = std::norm(u[i]);
    total += m;
    bool shell = false;
    for (int a = 0; a < g.dim(); ++a) {
      if (std::abs(g.x_component(a)[i]) >= 0.4 * g.length(a)) shell = true;
    }
    if (shell) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

Moment moment_variance(const Field& u) {
  const auto& g = u.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) r2 += g.x_component(a)[i] * g.x_component(a)[i];
    sum += r2 * std::norm(u[i]);
  }
  return {sum * g.cell_volume(), boundary_mass_fraction(u) >= kBoundaryMassLimit};
}

Moment radial_momentum(const Field& u) {
  const auto& g = u.grid();
  const auto grad = gradient(u);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cplx xgrad{};
    for (int a = 0; a < g.dim(); ++a) xgrad += g.x_component(a)[i] * grad[a][i];
    sum += (std::conj(u[i]) * xgrad).imag();
  }
  return {4.0 * sum * g.cell_volume(), boundary_mass_fraction(u) >= kBoundaryMassLimit};
}

}  // namespace gt
