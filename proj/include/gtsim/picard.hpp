#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gtsim/field.hpp"
#include "gtsim/nonlinearity.hpp"

namespace gt {

/// Chebyshev-Lobatto nodes on [0, T] (or [T, 0]) with a spectral
/// integration matrix: (M f)_q = int_0^{t_q} f.
class TimeNodes {
 public:
  TimeNodes() = default;
  /// Throws ConfigError for Q < 8 or T == 0.
  TimeNodes(double T, std::size_t Q = 16);

  double horizon() const { return T_; }
  std::size_t size() const { return t_.size(); }
  const std::vector<double>& times() const { return t_; }
  /// Row-major Q x Q.
  const std::vector<double>& integration_matrix() const { return M_; }
  double weight(std::size_t q, std::size_t r) const { return M_[q * t_.size() + r]; }
  std::vector<double> integrate(std::span<const double> f) const;
  /// Barycentric interpolation weights at t.
  std::vector<double> interpolation_weights(double t) const;

 private:
  double T_ = 0.0;
  std::vector<double> t_;
  std::vector<double> M_;
  std::vector<double> bary_;
};

/// One field per time node.
using NodeSeries = std::vector<Field>;

NodeSeries apply_L(const Field& u0, const TimeNodes& nodes, const GTConfig& cfg);
/// i int_0^t e^{i gamma (t-s) Lap} sum_m w_m e^{-i s_m Lap}[prod of e^{i s_m Lap} f_k,
/// odd slots conjugated] ds at every node. Needs p+1 arguments on one grid.
NodeSeries apply_Np(const std::vector<NodeSeries>& args, const TimeNodes& nodes, const GTConfig& cfg);
Field interpolate(const NodeSeries& series, const TimeNodes& nodes, double t);

/// Number of compositions of `total` into `parts` nonnegative parts.
std::size_t composition_count(int parts, int total);

struct PicardSeries {
  Field u0;
  GTConfig cfg;
  TimeNodes nodes;
  int J = 0;
  double norm_s = 0.0;                 ///< index of term_norms (homogeneous)
  std::vector<NodeSeries> terms;       ///< terms[j][q]
  std::vector<double> term_norms;      ///< sup over nodes of ||Xi_j||_{\dot H^{norm_s}}
  double regime_value = 0.0;           ///< T ||u0||^p_{H^{max(s_m,0)}}
  bool regime_warning = false;         ///< regime_value > 0.5
};

/// Xi_0 = L u0, Xi_j = sum over compositions of N_p(Xi_{j_0}, ..., Xi_{j_p}).
/// Throws ConfigError for J > 8.
PicardSeries xi_series(const Field& u0, double T, int J, std::size_t Q, const GTConfig& cfg,
                       std::optional<double> norm_s = std::nullopt);

struct SeriesSum {
  Field value;
  double error_estimate = 0.0;  ///< last-term norm / (1 - ratio), +inf without a ratio
  double observed_ratio = 0.0;
  bool divergent = false;
};
/// Partial sum at t (L^2 norms at t drive the error estimate).
SeriesSum sum_series(const PicardSeries& series, double t);

}  // namespace gt
