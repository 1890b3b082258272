#include "gtsim/lattice_series.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "gtsim/errors.hpp"

namespace gt {

cplx LatticeSpectrum::at(long k) const {
  if (k < kmin || k > kmax()) return {};
  return values[static_cast<std::size_t>(k - kmin)];
}

double LatticeSpectrum::norm(SobolevIndex idx) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double m = std::norm(values[i]);
    if (m == 0.0) continue;
    const double xi = dxi * static_cast<double>(kmin + static_cast<long>(i));
    double w;
    if (idx.homogeneous) {
      if (xi == 0.0) {
        if (idx.s < 0.0) throw DomainError("homogeneous norm with s < 0 of a spectrum with a zero mode");
        continue;
      }
      w = std::pow(xi * xi, idx.s);
    } else {
      w = std::pow(1.0 + xi * xi, idx.s);
    }
    sum += w * m;
  }
  return std::sqrt(sum * dxi);
}

double LatticeSpectrum::min_abs(double radius) const {
  double m = std::numeric_limits<double>::infinity();
  for (long k = kmin; k <= kmax(); ++k) {
    if (std::abs(dxi * static_cast<double>(k)) <= radius) m = std::min(m, std::abs(at(k)));
  }
  const long r = static_cast<long>(std::floor(radius / dxi));
  if (-r < kmin || r > kmax()) m = 0.0;  // window does not cover the ball
  return m;
}

void LatticeSpectrum::prune(double rel) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) <= rel * m) {
      values[i] = cplx{};
      support[i] = 0;
    }
  }
}

LatticeSpectrum LatticeSpectrum::zeros(double dxi, long kmin, long kmax) {
  LatticeSpectrum s;
  s.dxi = dxi;
  s.kmin = kmin;
  s.values.assign(static_cast<std::size_t>(kmax - kmin + 1), cplx{});
  s.support.assign(s.values.size(), 0);
  return s;
}

LatticeSpectrum LatticeSpectrum::from_field(const Field& u) {
  const Grid& g = u.grid();
  if (g.dim() != 1) throw ConfigError("lattice spectra are one-dimensional");
  const long n = static_cast<long>(g.n(0));
  auto s = zeros(g.dxi(0), -n / 2, n / 2 - 1);
  const auto spec = continuous_spectrum(u);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const long k = g.mode_component(0)[i];
    s.values[static_cast<std::size_t>(k + n / 2)] = spec[i];
    s.support[static_cast<std::size_t>(k + n / 2)] = spec[i] != cplx{} ? 1 : 0;
  }
  return s;
}

std::vector<cplx> LatticeSpectrum::on_grid(const Grid& grid) const {
  if (grid.dim() != 1 || std::abs(grid.dxi(0) - dxi) > 1e-12 * dxi) {
    throw ConfigError("lattice spectrum: grid spacing does not match");
  }
  const long n = static_cast<long>(grid.n(0));
  std::vector<cplx> out(grid.size(), cplx{});
  for (long k = kmin; k <= kmax(); ++k) {
    const cplx v = at(k);
    if (v == cplx{}) continue;
    if (k < -n / 2 || k >= n / 2) throw ConfigError("lattice spectrum does not fit the grid bandwidth");
    out[static_cast<std::size_t>((k + n) % n)] = v;
  }
  return out;
}

LatticeSpectrum box_spectrum(const InflationParams& params, double dxi) {
  const long nm = std::lround(params.N / dxi);
  const long am = static_cast<long>(std::floor(params.A / dxi + 1e-9));
  if (am < 1) throw ConfigError("frequency box is empty: A is smaller than the lattice spacing");
  if (nm < 1 || nm + am > 2 * nm) throw ConfigError("frequency boxes overlap (A > N)");
  auto s = LatticeSpectrum::zeros(dxi, nm, 2 * nm + am - 1);
  for (long k = nm; k < nm + am; ++k) {
    s.values[static_cast<std::size_t>(k - nm)] = params.R;
    s.support[static_cast<std::size_t>(k - nm)] = 1;
    const auto hi = static_cast<std::size_t>(k + nm - s.kmin);
    s.values[hi] = params.R;
    s.support[hi] = 1;
  }
  return s;
}

cplx resonance_factor(double tau, double x) {
  const double z = tau * x;
  if (std::abs(z) < 1e-4) return tau * cplx{1.0 - z * z / 6.0, -0.5 * z};
  return (1.0 - std::polar(1.0, -z)) / cplx{0.0, x};
}

CubicLatticeKernel::CubicLatticeKernel(double dxi, const GTConfig& cfg) : dxi_(dxi), cfg_(cfg) {
  cfg_.validate();
  if (cfg_.d != 1 || cfg_.p != 2) throw ConfigError("lattice kernel: cubic one-dimensional case only");
}

cplx CubicLatticeKernel::sigma_weight(double phi) const {
  if (cfg_.sigma_quad && cfg_.sigma_quad->user_table) {
    cplx s{};
    const auto& q = *cfg_.sigma_quad;
    for (std::size_t m = 0; m < q.size(); ++m) s += q.weights[m] * std::polar(1.0, q.nodes[m] * phi);
    return s;
  }
  const double lam = cfg_.sigma_upper();
  // int_0^Lambda e^{i sigma Phi} d sigma = conj(D_Lambda(Phi))
  return cfg_.measure_mass() / lam * std::conj(resonance_factor(lam, phi));
}

LatticeSpectrum product_window(const LatticeSpectrum& a, const LatticeSpectrum& b,
                               const LatticeSpectrum& c) {
  return LatticeSpectrum::zeros(a.dxi, a.kmin - b.kmax() + c.kmin, a.kmax() - b.kmin + c.kmax());
}

LatticeSpectrum xi1_closed_form(const LatticeSpectrum& phi, double t, const GTConfig& cfg) {
  CubicLatticeKernel K(phi.dxi, cfg);
  auto out = product_window(phi, phi, phi);
  if (t == 0.0) return out;
  const double g2 = 2.0 * phi.dxi * phi.dxi;
  const double gamma = cfg.gamma;
  K.accumulate(phi, phi, phi,
               [&](long m) {
                 const double Phi = g2 * static_cast<double>(m);
                 return resonance_factor(t, -gamma * Phi) * K.sigma_weight(Phi);
               },
               out);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double xi = phi.dxi * static_cast<double>(out.kmin + static_cast<long>(i));
    out.values[i] *= cplx{0.0, 1.0} * std::polar(1.0, -gamma * t * xi * xi);
  }
  return out;
}

std::vector<cplx> xi1_closed_form(const InflationParams& params, double t, const Grid& grid,
                                  const GTConfig& cfg) {
  const auto phi = box_spectrum(params, grid.dxi(0));
  return xi1_closed_form(phi, t, cfg).on_grid(grid);
}

namespace {

// e^{-i gamma t xi^2} between interaction and physical pictures
void picture_phase(LatticeSpectrum& s, double gamma, double t) {
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double xi = s.dxi * static_cast<double>(s.kmin + static_cast<long>(i));
    s.values[i] *= std::polar(1.0, -gamma * t * xi * xi);
  }
}

LatticeSpectrum window_union(const std::vector<LatticeSpectrum>& parts) {
  long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
  for (const auto& p : parts) {
    lo = std::min(lo, p.kmin);
    hi = std::max(hi, p.kmax());
  }
  return LatticeSpectrum::zeros(parts.front().dxi, lo, hi);
}

// all compositions of total into 3 nonnegative parts, lexicographic
std::vector<std::array<int, 3>> compositions3(int total) {
  std::vector<std::array<int, 3>> out;
  for (int a = total; a >= 0; --a)
    for (int b = total - a; b >= 0; --b) out.push_back({a, b, total - a - b});
  return out;
}

}  // namespace

LatticeSpectrum LatticeSeries::term(int j, double t) const {
  const auto& level = interaction.at(static_cast<std::size_t>(j));
  const auto w = nodes.interpolation_weights(t);
  auto out = LatticeSpectrum::zeros(level[0].dxi, level[0].kmin, level[0].kmax());
  out.support = level[0].support;
  for (std::size_t q = 0; q < level.size(); ++q) {
    if (w[q] == 0.0) continue;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += w[q] * level[q].values[i];
  }
  picture_phase(out, cfg.gamma, t);
  return out;
}

LatticeSeries lattice_xi_series(const LatticeSpectrum& phi, double T, int J, std::size_t Q,
                                const GTConfig& cfg) {
  if (J < 0 || J > 8) throw ConfigError("xi_series: depth J must lie in 0..8");
  LatticeSeries ls;
  ls.phi = phi;
  ls.cfg = cfg;
  ls.nodes = TimeNodes(T, Q);
  ls.J = J;
  CubicLatticeKernel K(phi.dxi, cfg);
  const std::size_t Qn = ls.nodes.size();
  ls.interaction.push_back(std::vector<LatticeSpectrum>(Qn, phi));
  const double g2 = 2.0 * phi.dxi * phi.dxi;
  const double gamma = cfg.gamma;
  for (int j = 1; j <= J; ++j) {
    const auto comps = compositions3(j - 1);
    std::vector<LatticeSpectrum> windows;
    for (const auto& c : comps) {
      windows.push_back(product_window(ls.interaction[c[0]][0], ls.interaction[c[1]][0],
                                       ls.interaction[c[2]][0]));
    }
    const auto window = window_union(windows);
    std::vector<LatticeSpectrum> h(Qn, window);
    for (std::size_t r = 0; r < Qn; ++r) {
      const double s = ls.nodes.times()[r];
      for (const auto& c : comps) {
        K.accumulate(ls.interaction[c[0]][r], ls.interaction[c[1]][r], ls.interaction[c[2]][r],
                     [&](long m) {
                       const double Phi = g2 * static_cast<double>(m);
                       return K.sigma_weight(Phi) * std::polar(1.0, gamma * s * Phi);
                     },
                     h[r]);
      }
    }
    std::vector<LatticeSpectrum> level(Qn, window);
    for (std::size_t q = 0; q < Qn; ++q) {
      for (std::size_t r = 0; r < Qn; ++r) {
        const double w = ls.nodes.weight(q, r);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < window.values.size(); ++i) level[q].values[i] += w * h[r].values[i];
      }
      for (std::size_t i = 0; i < window.values.size(); ++i) {
        level[q].values[i] *= cplx{0.0, 1.0};
        level[q].support[i] = h[0].support[i];
      }
    }
    ls.interaction.push_back(std::move(level));
  }
  return ls;
}

TermBoundReport series_term_bound_check(const LatticeSeries& series, const InflationParams& params,
                                        double A_eff, double s, double t) {
  TermBoundReport rep;
  rep.t = t;
  rep.s = s;
  const double logA = std::log(A_eff);
  double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
  for (int j = 0; j <= series.J; ++j) {
    TermBoundRow row;
    row.j = j;
    row.norm = series.term(j, t).norm({s, false});
    row.envelope = std::pow(t, j) * std::pow(params.R, 2 * j + 1) * std::pow(logA, 2 * j);
    row.C = j == 0 ? row.norm / row.envelope : std::pow(row.norm / row.envelope, 1.0 / j);
    if (j >= 1) {
      cmin = std::min(cmin, row.C);
      cmax = std::max(cmax, row.C);
    }
    rep.rows.push_back(row);
  }
  if (series.J >= 1) {
    rep.C_fit = rep.rows[1].C;
    rep.C_spread = cmax / cmin;
    rep.envelope_holds = true;
    for (int j = 2; j <= series.J; ++j) {
      const auto& r = rep.rows[static_cast<std::size_t>(j)];
      if (r.norm > std::pow(3.0 * rep.C_fit, j) * r.envelope) rep.envelope_holds = false;
    }
  }
  if (series.J >= 3) {
    rep.higher_over_first = (rep.rows[2].norm + rep.rows[3].norm) / rep.rows[1].norm;
    rep.dominance = rep.higher_over_first <= 0.5;
  }
  return rep;
}

}  // namespace gt
