#include "gtsim/picard.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gtsim/errors.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/spectral.hpp"

namespace gt {

TimeNodes::TimeNodes(double T, std::size_t Q) : T_(T) {
  if (Q < 8) throw ConfigError("time nodes: at least 8 Chebyshev nodes are required");
  if (!(T != 0.0) || !std::isfinite(T)) throw ConfigError("time nodes: horizon must be finite and nonzero");
  const std::size_t M = Q - 1;
  const double pi = std::numbers::pi;
  t_.resize(Q);
  for (std::size_t j = 0; j < Q; ++j) {
    const double x = -std::cos(pi * static_cast<double>(j) / static_cast<double>(M));
    t_[j] = 0.5 * T * (x + 1.0);
  }
  t_.front() = 0.0;
  t_.back() = T;
  // cos table for T_k(x_j) = (-1)^k cos(pi k j / M)
  std::vector<double> Tkj(Q * Q);
  for (std::size_t k = 0; k < Q; ++k) {
    for (std::size_t j = 0; j < Q; ++j) {
      const double c = std::cos(pi * static_cast<double>(k * j % (2 * M)) / static_cast<double>(M));
      Tkj[k * Q + j] = (k % 2 == 0) ? c : -c;
    }
  }
  M_.assign(Q * Q, 0.0);
  std::vector<double> alpha(Q + 2), beta(Q + 2);
  for (std::size_t r = 0; r < Q; ++r) {
    // coefficients of the interpolant of the unit vector e_r
    const double fr = (r == 0 || r == M) ? 0.5 : 1.0;
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (std::size_t k = 0; k < Q; ++k) {
      double a = 2.0 / static_cast<double>(M) * fr * Tkj[k * Q + r];
      if (k == 0 || k == M) a *= 0.5;
      alpha[k] = a;
    }
    std::fill(beta.begin(), beta.end(), 0.0);
    for (std::size_t k = 1; k <= Q; ++k) {
      const double prev = (k == 1 ? 2.0 : 1.0) * alpha[k - 1];
      beta[k] = (prev - alpha[k + 1]) / (2.0 * static_cast<double>(k));
    }
    double at_left = 0.0;
    for (std::size_t k = 1; k <= Q; ++k) at_left += (k % 2 == 0 ? 1.0 : -1.0) * beta[k];
    for (std::size_t q = 0; q < Q; ++q) {
      const double x = -std::cos(pi * static_cast<double>(q) / static_cast<double>(M));
      // Chebyshev recurrence up to degree Q
      double t0 = 1.0, t1 = x, F = beta[1] * x;
      for (std::size_t k = 2; k <= Q; ++k) {
        const double t2 = 2.0 * x * t1 - t0;
        F += beta[k] * t2;
        t0 = t1;
        t1 = t2;
      }
      M_[q * Q + r] = 0.5 * T * (F - at_left);
    }
  }
  bary_.resize(Q);
  for (std::size_t j = 0; j < Q; ++j) {
    bary_[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == M) ? 0.5 : 1.0);
  }
}

std::vector<double> TimeNodes::integrate(std::span<const double> f) const {
  const std::size_t Q = t_.size();
  std::vector<double> out(Q, 0.0);
  for (std::size_t q = 0; q < Q; ++q) {
    for (std::size_t r = 0; r < Q; ++r) out[q] += M_[q * Q + r] * f[r];
  }
  return out;
}

std::vector<double> TimeNodes::interpolation_weights(double t) const {
  const std::size_t Q = t_.size();
  std::vector<double> w(Q, 0.0);
  for (std::size_t j = 0; j < Q; ++j) {
    if (t == t_[j]) {
      w[j] = 1.0;
      return w;
    }
  }
  double denom = 0.0;
  for (std::size_t j = 0; j < Q; ++j) {
    w[j] = bary_[j] / (t - t_[j]);
    denom += w[j];
  }
  for (auto& v : w) v /= denom;
  return w;
}

NodeSeries apply_L(const Field& u0, const TimeNodes& nodes, const GTConfig& cfg) {
  NodeSeries out;
  out.reserve(nodes.size());
  for (double t : nodes.times()) out.push_back(free_propagate(u0, t, cfg.gamma));
  return out;
}

Field interpolate(const NodeSeries& series, const TimeNodes& nodes, double t) {
  if (series.size() != nodes.size()) throw DomainError("interpolate: series does not match the nodes");
  const auto w = nodes.interpolation_weights(t);
  Field out(series[0].grid());
  for (std::size_t q = 0; q < series.size(); ++q) {
    if (w[q] != 0.0) out += cplx{w[q], 0.0} * series[q];
  }
  return out;
}

namespace {

using Coeffs = std::vector<cplx>;

// sum_m w_m e^{-i s_m Lap}[prod], where fill(m, sigma, bufs, prod) writes the
// padded physical product for node m using `nbuf` scratch arrays.
template <class Fill>
Coeffs sigma_sum(const SigmaEvaluator& ev, std::size_t nbuf, Fill fill) {
  const auto& quad = ev.quadrature();
  const std::size_t n = ev.grid().size();
  const std::size_t M = quad.size();
  const std::size_t chunks = (M + kSigmaChunk - 1) / kSigmaChunk;
  std::vector<Coeffs> partial(chunks);
  run_chunks(chunks, [&](std::size_t c) {
    std::vector<Coeffs> bufs(nbuf, Coeffs(ev.padded_size()));
    Coeffs prod(ev.padded_size());
    Coeffs acc(n, cplx{});
    const std::size_t hi = std::min(M, (c + 1) * kSigmaChunk);
    for (std::size_t m = c * kSigmaChunk; m < hi; ++m) {
      fill(m, quad.nodes[m], bufs, prod);
      ev.accumulate_from_padded(prod, quad.nodes[m], quad.weights[m], acc);
    }
    partial[c] = std::move(acc);
  });
  Coeffs out(n, cplx{});
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < n; ++i) out[i] += p[i];
  }
  return out;
}

// h[r] holds sigma sums at node r (physical picture); returns
// i e^{i gamma t_q Lap} sum_r M_qr e^{-i gamma s_r Lap} h_r.
std::vector<Coeffs> time_integrate(const Grid& g, const TimeNodes& nodes, double gamma,
                                   std::vector<Coeffs> h) {
  const std::size_t Q = nodes.size();
  for (std::size_t r = 0; r < Q; ++r) apply_free_propagator(g, h[r], nodes.times()[r], -gamma);
  std::vector<Coeffs> out(Q, Coeffs(g.size(), cplx{}));
  for (std::size_t q = 0; q < Q; ++q) {
    for (std::size_t r = 0; r < Q; ++r) {
      const double w = nodes.weight(q, r);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < g.size(); ++i) out[q][i] += w * h[r][i];
    }
    for (auto& v : out[q]) v *= cplx{0.0, 1.0};
    apply_free_propagator(g, out[q], nodes.times()[q], gamma);
  }
  return out;
}

NodeSeries to_fields(const Grid& g, std::vector<Coeffs> c) {
  NodeSeries out;
  out.reserve(c.size());
  for (auto& v : c) out.push_back(from_fourier_coefficients(g, std::move(v)));
  return out;
}

}  // namespace

NodeSeries apply_Np(const std::vector<NodeSeries>& args, const TimeNodes& nodes, const GTConfig& cfg) {
  const std::size_t slots = static_cast<std::size_t>(cfg.p) + 1;
  if (args.size() != slots) throw DomainError("apply_Np: expected p+1 arguments");
  const std::size_t Q = nodes.size();
  for (const auto& a : args) {
    if (a.size() != Q) throw DomainError("apply_Np: argument sampled on different nodes");
  }
  const Grid& g = args[0][0].grid();
  for (const auto& a : args) {
    for (const auto& f : a) {
      if (!(f.grid() == g)) throw DomainError("apply_Np: arguments live on different grids");
    }
  }
  SigmaEvaluator ev(g, cfg);
  std::vector<Coeffs> h(Q);
  for (std::size_t r = 0; r < Q; ++r) {
    std::vector<Coeffs> c(slots);
    for (std::size_t k = 0; k < slots; ++k) c[k] = fourier_coefficients(args[k][r]);
    h[r] = sigma_sum(ev, slots, [&](std::size_t, double sigma, std::vector<Coeffs>& bufs, Coeffs& prod) {
      for (std::size_t k = 0; k < slots; ++k) ev.to_padded_physical(c[k], sigma, bufs[k]);
      for (std::size_t x = 0; x < prod.size(); ++x) {
        cplx v = bufs[0][x];
        for (std::size_t k = 1; k < slots; ++k) v *= (k % 2 == 1) ? std::conj(bufs[k][x]) : bufs[k][x];
        prod[x] = v;
      }
    });
  }
  return to_fields(g, time_integrate(g, nodes, cfg.gamma, std::move(h)));
}

std::size_t composition_count(int parts, int total) {
  if (parts <= 0 || total < 0) return parts == 0 && total == 0 ? 1 : 0;
  // C(total + parts - 1, parts - 1)
  double c = 1.0;
  for (int i = 1; i < parts; ++i) c = c * (total + i) / i;
  return static_cast<std::size_t>(std::llround(c));
}

PicardSeries xi_series(const Field& u0, double T, int J, std::size_t Q, const GTConfig& cfg,
                       std::optional<double> norm_s) {
  if (J < 0 || J > 8) throw ConfigError("xi_series: depth J must lie in 0..8");
  cfg.validate();
  PicardSeries ps;
  ps.u0 = u0;
  ps.cfg = cfg;
  ps.nodes = TimeNodes(T, Q);
  ps.J = J;
  const auto [sm, si] = critical_regularities(cfg.d, cfg.p);
  (void)si;
  const double s_reg = std::max(sm, 0.0);
  ps.norm_s = norm_s.value_or(s_reg);
  ps.regime_value = std::abs(T) * std::pow(sobolev_norm(u0, {s_reg, false}), cfg.p);
  ps.regime_warning = ps.regime_value > 0.5;

  const Grid& g = u0.grid();
  const std::size_t n = g.size();
  const std::size_t Qn = ps.nodes.size();
  std::vector<std::vector<Coeffs>> terms;  // [j][q]
  {
    const auto c0 = fourier_coefficients(u0);
    std::vector<Coeffs> level(Qn, c0);
    for (std::size_t q = 0; q < Qn; ++q) apply_free_propagator(g, level[q], ps.nodes.times()[q], cfg.gamma);
    terms.push_back(std::move(level));
  }
  if (J > 0) {
    SigmaEvaluator ev(g, cfg);
    const int a = cfg.p / 2 + 1;
    const int b = cfg.p / 2;
    const std::size_t P = ev.padded_size();
    for (int j = 1; j <= J; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      std::vector<Coeffs> h(Qn);
      for (std::size_t r = 0; r < Qn; ++r) {
        // [z^{j-1}] V^a conj-series(V)^b with V = sum_k z^k e^{i sigma Lap} Xi_k(s_r)
        h[r] = sigma_sum(ev, 2 * ju + 1, [&](std::size_t, double sigma, std::vector<Coeffs>& bufs, Coeffs& prod) {
          for (std::size_t k = 0; k < ju; ++k) ev.to_padded_physical(terms[k][r], sigma, bufs[k]);
          // running product in bufs[j .. 2j-1]
          auto* cur = &bufs[ju];
          for (std::size_t k = 0; k < ju; ++k) std::copy(bufs[k].begin(), bufs[k].end(), cur[k].begin());
          Coeffs& tmp = bufs[2 * ju];
          const int mults = a + b - 1;
          for (int f = 0; f < mults; ++f) {
            const bool conj = f >= a - 1;
            const bool last = f == mults - 1;
            const std::size_t kmin = last ? ju - 1 : 0;
            for (std::size_t k = ju; k-- > kmin;) {
              std::fill(tmp.begin(), tmp.end(), cplx{});
              for (std::size_t l = 0; l <= k; ++l) {
                const Coeffs& x = bufs[k - l];
                const Coeffs& c = cur[l];
                if (conj) {
                  for (std::size_t i = 0; i < P; ++i) tmp[i] += c[i] * std::conj(x[i]);
                } else {
                  for (std::size_t i = 0; i < P; ++i) tmp[i] += c[i] * x[i];
                }
              }
              std::swap(cur[k], tmp);
            }
          }
          std::copy(cur[ju - 1].begin(), cur[ju - 1].end(), prod.begin());
        });
      }
      terms.push_back(time_integrate(g, ps.nodes, cfg.gamma, std::move(h)));
    }
  }
  ps.terms.reserve(terms.size());
  ps.term_norms.reserve(terms.size());
  for (auto& level : terms) {
    double sup = 0.0;
    for (const auto& c : level) {
      sup = std::max(sup, sobolev_norm_from_coefficients(g, c, {ps.norm_s, true}));
    }
    ps.term_norms.push_back(sup);
    ps.terms.push_back(to_fields(g, std::move(level)));
  }
  (void)n;
  return ps;
}

SeriesSum sum_series(const PicardSeries& series, double t) {
  SeriesSum out;
  std::vector<double> norms;
  for (const auto& term : series.terms) {
    Field f = interpolate(term, series.nodes, t);
    norms.push_back(l2_norm(f));
    out.value = out.value.size() == 0 ? f : out.value + f;
  }
  const std::size_t J = norms.size() - 1;
  if (J == 0) {
    out.error_estimate = std::numeric_limits<double>::infinity();
    return out;
  }
  auto ratio = [&](std::size_t j) { return norms[j - 1] > 0.0 ? norms[j] / norms[j - 1] : 0.0; };
  double r = ratio(J);
  if (J >= 2) r = std::max(r, ratio(J - 1));
  out.observed_ratio = r;
  out.divergent = r >= 1.0;
  out.error_estimate = out.divergent ? std::numeric_limits<double>::infinity() : norms[J] / (1.0 - r);
  return out;
}

}  // namespace gt
