#pragma once

#include <span>
#include <utility>

#include "gtsim/field.hpp"
#include "gtsim/grid.hpp"

namespace gt {

/// Frequency-box family: spectrum R on [N, N+A) and [2N, 2N+A).
struct InflationParams {
  double N = 0.0;
  double A = 0.0;
  double R = 1.0;
  double delta = 0.2;
  double s = -2.0;
  double T = 0.0;

  /// R = N^{1+3 delta}, A = N^{1-delta}, T = N^{-3-6 delta}.
  static InflationParams from_scaling(double N, double delta, double s);
  /// A >= 8 dxi and N >= 4A.
  bool separated(double dxi) const;
};

struct GaussianParams {
  double A = 1.0;
  double sigma = 1.0;
};

/// Lattice-snapped box data with the effective parameters actually used.
struct BoxData {
  Field field;
  long n_mode = 0;  ///< first lattice index of the low box
  long a_modes = 0; ///< modes per box
  double N_eff = 0.0;
  double A_eff = 0.0;
  double R = 0.0;
};

/// Snapping: N to the nearest lattice multiple, A down to a whole number of
/// modes. Throws ConfigError for an empty box, overlapping boxes or boxes
/// beyond the positive half of the lattice.
BoxData freq_box_data(const Grid& grid, const InflationParams& params);

/// C-infinity radial profile: 1 on [1/2, 2], 0 outside (1/4, 4).
double annulus_profile(double r);
/// N^d e^{i min(1,T) Lap} phi(N x) with phi-hat = annulus_profile(|xi|).
Field annulus_bump(const Grid& grid, double N, double T);

/// A exp(-|x|^2 / (4 sigma^2)). Throws ConfigError if sigma < 4 dx or the
/// tails at the boundary exceed 1e-12.
Field gaussian_data(const Grid& grid, const GaussianParams& params);

/// x -> lambda^{-2/p} u(x / lambda) on the grid with n' = lambda n, L' = lambda L.
Field rescale_monomial(const Field& u, int lambda, int p);
/// x -> lambda^{-4/p} u(x / lambda) on the enlarged grid.
Field rescale_integrated(const Field& u, int lambda, int p);
/// Band-limited resampling onto the enlarged grid times `amplitude`.
Field rescale_spatial(const Field& u, int lambda, double amplitude);

/// (s_m, s_i) = (d/2 - 2/p, d/2 - 4/p).
std::pair<double, double> critical_regularities(int d, int p);

/// a exp(i xi_0 . x) for an integer mode vector.
Field plane_wave(const Grid& grid, cplx a, std::span<const long> modes);

}  // namespace gt
