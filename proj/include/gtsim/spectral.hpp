#pragma once

#include <span>
#include <vector>

#include "gtsim/field.hpp"
#include "gtsim/grid.hpp"

namespace gt {

/// Regularity index for H^s (inhomogeneous) or \dot H^s (homogeneous).
struct SobolevIndex {
  double s = 0.0;
  bool homogeneous = false;
};

/// A quadrature moment together with the torus-validity flag: `degraded`
/// is set when more than 1e-4 of the mass sits in the outer shell.
struct Moment {
  double value = 0.0;
  bool degraded = false;
};

inline constexpr double kBoundaryMassLimit = 1e-4;
inline constexpr double kZeroModeThreshold = 1e-12;

// ---- representation changes -------------------------------------------------

/// Fourier-series coefficients c_k (DFT / number of points), FFT order.
std::vector<cplx> fourier_coefficients(const Field& u);
Field from_fourier_coefficients(const Grid& grid, std::vector<cplx> coeffs);
/// Samples of the (unitary, 2*pi-normalized) continuous Fourier transform on
/// the lattice, FFT order. Plancherel holds with the dual cell volume.
std::vector<cplx> continuous_spectrum(const Field& u);
Field from_continuous_spectrum(const Grid& grid, std::span<const cplx> spectrum);
/// Multiplier converting Fourier coefficients to continuous spectrum samples
/// at a flat spectral index.
cplx coefficient_to_spectrum_factor(const Grid& grid, std::size_t index);

// ---- linear flow ------------------------------------------------------------

/// Multiplies coefficients by exp(-i c tau |xi|^2), i.e. applies exp(i c tau Delta).
void apply_free_propagator(const Grid& grid, std::span<cplx> coeffs, double tau, double c);
Field free_propagate(const Field& u, double tau, double c);

// ---- norms ------------------------------------------------------------------

double sobolev_norm(const Field& u, SobolevIndex idx);
double sobolev_norm_from_coefficients(const Grid& grid, std::span<const cplx> coeffs,
                                      SobolevIndex idx);
/// Rectangle rule (sum |u|^q dx^d)^(1/q).
double lebesgue_norm(const Field& u, double q);
double l2_norm(const Field& u);
double l2_distance(const Field& a, const Field& b);
/// Physical-side mass, sum |u|^2 dx^d.
double mass(const Field& u);

// ---- derivatives and moments ------------------------------------------------

std::vector<Field> gradient(const Field& u);
/// Fraction of the mass with some |x_i| >= 0.4 L_i.
double boundary_mass_fraction(const Field& u);
/// v = int |x|^2 |u|^2 dx.
Moment moment_variance(const Field& u);
/// 4 Im int conj(u) (x . grad u) dx.
Moment radial_momentum(const Field& u);

}  // namespace gt
