#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace gt {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 3;

/// Periodic torus [-L/2, L/2)^d sampled on n points per axis.
///
/// Coordinates are x_j = -L/2 + j*dx and the wavenumber lattice is
/// xi_k = 2*pi*k/L for k in [-n/2, n/2). Flat arrays are row-major with the
/// last axis fastest; spectral arrays use the FFT ordering (k = 0, 1, ...,
/// n/2-1, -n/2, ..., -1) on every axis.
class Grid {
 public:
  Grid();

  /// Throws ConfigError unless 1 <= d <= 3, every n_i is a power of two
  /// >= 8 and every L_i > 0.
  static Grid make(int d, std::span<const std::size_t> n, std::span<const double> L);
  static Grid line(std::size_t n, double L);

  int dim() const { return d_; }
  std::size_t n(int axis) const { return n_[axis]; }
  double length(int axis) const { return L_[axis]; }
  double dx(int axis) const { return L_[axis] / static_cast<double>(n_[axis]); }
  double dxi(int axis) const;
  std::size_t size() const { return total_; }
  double cell_volume() const;
  double dual_cell_volume() const;
  /// Largest |xi|^2 on the lattice (the Nyquist corner).
  double xi_max_sq() const;
  double xi_max() const;

  std::vector<double> coordinates(int axis) const;
  /// Lattice wavenumbers in FFT order.
  std::vector<double> wavenumbers(int axis) const;
  /// Lattice wavenumbers sorted ascending.
  std::vector<double> lattice(int axis) const;

  /// |xi|^2 for every flat spectral index (FFT order).
  std::span<const double> xi_squared() const;
  /// xi_axis for every flat spectral index (FFT order).
  std::span<const double> xi_component(int axis) const;
  /// x_axis for every flat physical index.
  std::span<const double> x_component(int axis) const;
  /// Signed integer mode number along `axis` for every flat spectral index.
  std::span<const long> mode_component(int axis) const;

  std::array<std::size_t, kMaxDim> shape() const { return n_; }
  std::array<double, kMaxDim> lengths() const { return L_; }

  bool operator==(const Grid& other) const;

 private:
  struct Raw {};
  explicit Grid(Raw) {}
  struct Tables;
  int d_ = 1;
  std::array<std::size_t, kMaxDim> n_{1, 1, 1};
  std::array<double, kMaxDim> L_{1.0, 1.0, 1.0};
  std::size_t total_ = 1;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace gt
