#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace gt {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t m);

/// Node/weight table for the sigma integral of the nonlinearity.
///
/// `resolved_xi_max_sq` is the largest |xi|^2 whose phase exp(-i sigma |xi|^2)
/// the rule was built to resolve; user tables carry +inf and are never
/// validated against a grid.
struct SigmaQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  double upper = 1.0;
  bool user_table = false;
  std::size_t points_per_panel = 0;
  double resolved_xi_max_sq = std::numeric_limits<double>::infinity();

  /// Composite Gauss-Legendre with `panels` equal panels on [0, upper],
  /// weights scaled to sum to `total_weight`.
  static SigmaQuadrature composite(double upper, std::size_t panels, std::size_t points_per_panel,
                                   double total_weight);
  /// Default rule resolving phases up to |xi|^2 = xi_max_sq: panels of width
  /// at most pi / xi_max_sq, at least 8 nodes in total.
  static SigmaQuadrature for_bandwidth(double upper, double xi_max_sq, double total_weight,
                                       std::size_t points_per_panel = 4);
  /// Arbitrary measure; validated only for ordering and nonnegativity.
  static SigmaQuadrature from_table(std::vector<double> nodes, std::vector<double> weights,
                                    double upper);

  /// max(8, ceil(upper * xi_max_sq / pi) * points_per_panel)
  static std::size_t required_nodes(double upper, double xi_max_sq, std::size_t points_per_panel = 4);

  std::size_t size() const { return nodes.size(); }
  double weight_sum() const;
  /// Throws ConfigError when nodes are not strictly increasing in [0, upper]
  /// or a weight is negative.
  void validate() const;
};

/// Weights for integrating samples f(t_0..t_K) from t_0 to every t_k with
/// local Lagrange interpolants of the given degree. Row k of the returned
/// (K+1) x (K+1) row-major matrix produces int_{t_0}^{t_k} f.
std::vector<double> cumulative_integration_weights(const std::vector<double>& times,
                                                   std::size_t degree);

}  // namespace gt
