#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtsim/field.hpp"
#include "gtsim/grid.hpp"
#include "gtsim/quadrature.hpp"

namespace gt {

enum class Variant {
  AveragedUnit,        ///< int_0^1 d sigma (the GT equation)
  IntegratedInterval,  ///< int_0^Lambda d sigma
  AveragedInterval,    ///< Lambda^{-1} int_0^Lambda d sigma
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& name);

struct GTConfig {
  int d = 1;
  int p = 2;
  double gamma = -1.0;
  Variant variant = Variant::AveragedUnit;
  /// Lambda; ignored (forced to 1) for AveragedUnit.
  double upper = 1.0;
  /// Explicit sigma rule; when absent a default rule is built per grid.
  std::optional<SigmaQuadrature> sigma_quad;
  std::size_t points_per_panel = 4;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
  double sigma_upper() const { return variant == Variant::AveragedUnit ? 1.0 : upper; }
  /// Total mass of the sigma measure: 1 for averaged variants, Lambda otherwise.
  double measure_mass() const;
  /// The rule used on `grid`; throws ConfigError when an explicit default-built
  /// rule does not resolve the grid bandwidth.
  SigmaQuadrature quadrature_for(const Grid& grid) const;
};

/// Number of worker threads used by sigma loops (GTSIM_THREADS, default 1).
std::size_t worker_count();

/// Dealiased evaluator of the sigma-averaged nonlinearity on one grid.
///
/// Every product is formed on a grid zero-padded by (p+2)/2 per axis, so the
/// truncated nonlinearity is exactly the gradient of the padded potential.
/// All operations work on Fourier coefficients (FFT order).
class SigmaEvaluator {
 public:
  SigmaEvaluator(const Grid& grid, const GTConfig& cfg);

  const Grid& grid() const { return grid_; }
  const GTConfig& config() const { return cfg_; }
  const SigmaQuadrature& quadrature() const { return quad_; }
  std::size_t pad_factor() const { return pad_; }
  std::size_t padded_size() const { return padded_total_; }
  std::span<const std::size_t> padded_shape() const { return {padded_shape_.data(), static_cast<std::size_t>(grid_.dim())}; }

  /// out = sum_m w_m e^{-i s_m Lap}[|v_m|^p v_m], v_m = e^{i s_m Lap} u.
  void nonlinearity(std::span<const cplx> coeffs, std::span<cplx> out) const;

  struct PowerIntegrals {
    double plain = 0.0;     ///< sum_m w_m int |v_m|^{p+2}
    double weighted = 0.0;  ///< sum_m w_m sigma_m int |v_m|^{p+2}
  };
  PowerIntegrals power_integrals(std::span<const cplx> coeffs) const;
  /// int |e^{i sigma Lap} u|^{p+2} dx at a single sigma.
  double endpoint_power_integral(std::span<const cplx> coeffs, double sigma) const;

  /// Zero-pads e^{i sigma Lap} u into `padded` and transforms to physical space.
  void to_padded_physical(std::span<const cplx> coeffs, double sigma, std::span<cplx> padded) const;
  /// out += weight * e^{-i sigma Lap} P(padded), where `padded` holds physical
  /// samples on the padded grid (destroyed) and P truncates to the base grid.
  void accumulate_from_padded(std::span<cplx> padded, double sigma, cplx weight,
                              std::span<cplx> out) const;

  /// Runs fn(m, buffers) for every sigma node, partitioned into fixed chunks;
  /// per-chunk results are combined by `merge` in chunk order.
  template <class State, class Fn, class Merge>
  void for_each_node(State init, Fn fn, Merge merge) const;

  double padded_cell_volume() const { return padded_cell_volume_; }

 private:
  Grid grid_;
  GTConfig cfg_;
  SigmaQuadrature quad_;
  std::size_t pad_ = 2;
  std::array<std::size_t, kMaxDim> padded_shape_{1, 1, 1};
  std::size_t padded_total_ = 1;
  double padded_cell_volume_ = 1.0;
  std::vector<std::size_t> pad_index_;
  // e^{-i sigma_m |xi|^2} per node, kept when small enough
  std::vector<cplx> phases_;
  const cplx* phase_row(double sigma) const;
};

/// Runs body(chunk) for chunk = 0..chunks-1 on up to worker_count() threads.
void run_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);
inline constexpr std::size_t kSigmaChunk = 16;

template <class State, class Fn, class Merge>
void SigmaEvaluator::for_each_node(State init, Fn fn, Merge merge) const {
  const std::size_t m = quad_.size();
  const std::size_t chunks = (m + kSigmaChunk - 1) / kSigmaChunk;
  std::vector<State> partial(chunks, init);
  run_chunks(chunks, [&](std::size_t c) {
    std::vector<cplx> buf(padded_total_);
    const std::size_t hi = std::min(m, (c + 1) * kSigmaChunk);
    for (std::size_t i = c * kSigmaChunk; i < hi; ++i) fn(i, buf, partial[c]);
  });
  for (auto& s : partial) merge(s);
}

Field gt_nonlinearity(const Field& u, const GTConfig& cfg);
/// (1/(p+2)) sum_m w_m int |e^{i s_m Lap} u|^{p+2} dx.
double potential_energy(const Field& u, const GTConfig& cfg);
/// -(gamma/2) int |grad u|^2 + potential_energy.
double energy(const Field& u, const GTConfig& cfg);
/// \dot H^1 seminorm squared, int |grad u|^2.
double gradient_energy(const Field& u);

}  // namespace gt
