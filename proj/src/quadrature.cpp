#include "gtsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/legendre.hpp>

#include "gtsim/errors.hpp"

namespace gt {

GaussRule gauss_legendre(std::size_t m) {
  GaussRule r;
  const int n = static_cast<int>(m);
  // boost returns the nonnegative zeros in ascending order
  const auto half = boost::math::legendre_p_zeros<double>(n);
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it != 0.0) r.nodes.push_back(-*it);
  }
  for (double z : half) r.nodes.push_back(z);
  for (double x : r.nodes) {
    const double dp = boost::math::legendre_p_prime(n, x);
    r.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return r;
}

SigmaQuadrature SigmaQuadrature::composite(double upper, std::size_t panels,
                                           std::size_t points_per_panel, double total_weight) {
  if (!(upper > 0.0)) throw ConfigError("sigma quadrature: upper endpoint must be positive");
  if (panels == 0 || points_per_panel == 0) throw ConfigError("sigma quadrature: empty rule");
  const auto rule = gauss_legendre(points_per_panel);
  SigmaQuadrature q;
  q.upper = upper;
  q.points_per_panel = points_per_panel;
  q.nodes.reserve(panels * points_per_panel);
  q.weights.reserve(panels * points_per_panel);
  const double h = upper / static_cast<double>(panels);
  const double scale = total_weight / upper;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = h * static_cast<double>(p);
    for (std::size_t i = 0; i < points_per_panel; ++i) {
      q.nodes.push_back(a + 0.5 * h * (rule.nodes[i] + 1.0));
      q.weights.push_back(0.5 * h * rule.weights[i] * scale);
    }
  }
  q.resolved_xi_max_sq = std::numbers::pi / h;
  return q;
}

std::size_t SigmaQuadrature::required_nodes(double upper, double xi_max_sq,
                                            std::size_t points_per_panel) {
  const auto panels = static_cast<std::size_t>(std::ceil(upper * xi_max_sq / std::numbers::pi - 1e-12));
  return std::max<std::size_t>(8, std::max<std::size_t>(panels, 1) * points_per_panel);
}

SigmaQuadrature SigmaQuadrature::for_bandwidth(double upper, double xi_max_sq, double total_weight,
                                               std::size_t points_per_panel) {
  const std::size_t count = required_nodes(upper, xi_max_sq, points_per_panel);
  const std::size_t panels = (count + points_per_panel - 1) / points_per_panel;
  auto q = composite(upper, panels, points_per_panel, total_weight);
  return q;
}

SigmaQuadrature SigmaQuadrature::from_table(std::vector<double> nodes, std::vector<double> weights,
                                            double upper) {
  SigmaQuadrature q;
  q.nodes = std::move(nodes);
  q.weights = std::move(weights);
  q.upper = upper;
  q.user_table = true;
  q.validate();
  return q;
}

double SigmaQuadrature::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void SigmaQuadrature::validate() const {
  if (nodes.empty() || nodes.size() != weights.size()) {
    throw ConfigError("sigma quadrature: node and weight tables must be nonempty and equal length");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] >= 0.0 && nodes[i] <= upper)) {
      std::ostringstream os;
      os << "sigma quadrature: node " << nodes[i] << " outside [0, " << upper << "]";
      throw ConfigError(os.str());
    }
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw ConfigError("sigma quadrature: nodes must be strictly increasing");
    }
    if (!(weights[i] >= 0.0)) throw ConfigError("sigma quadrature: weights must be nonnegative");
  }
}

std::vector<double> cumulative_integration_weights(const std::vector<double>& times,
                                                   std::size_t degree) {
  const std::size_t K = times.size();
  std::vector<double> W(K * K, 0.0);
  if (K < 2) return W;
  degree = std::min(degree, K - 1);
  const std::size_t stencil = degree + 1;
  const auto gl = gauss_legendre(std::max<std::size_t>(stencil, 2));
  // per-interval weights over the stencil, accumulated row by row
  std::vector<double> running(K, 0.0);
  for (std::size_t i = 0; i + 1 < K; ++i) {
    // stencil of `stencil` consecutive points centered on [t_i, t_{i+1}]
    long start = static_cast<long>(i) - static_cast<long>(degree / 2);
    start = std::clamp<long>(start, 0, static_cast<long>(K - stencil));
    const double a = times[i];
    const double b = times[i + 1];
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = a + 0.5 * (b - a) * (gl.nodes[q] + 1.0);
      const double wq = 0.5 * (b - a) * gl.weights[q];
      for (std::size_t j = 0; j < stencil; ++j) {
        const std::size_t jj = static_cast<std::size_t>(start) + j;
        double basis = 1.0;
        for (std::size_t l = 0; l < stencil; ++l) {
          if (l == j) continue;
          const std::size_t ll = static_cast<std::size_t>(start) + l;
          basis *= (t - times[ll]) / (times[jj] - times[ll]);
        }
        running[jj] += wq * basis;
      }
    }
    std::copy(running.begin(), running.end(), W.begin() + static_cast<long>((i + 1) * K));
  }
  return W;
}

}  // namespace gt
