#include "gtsim/evolution.hpp"

#include <cmath>
#include <sstream>

#include "gtsim/errors.hpp"
#include "gtsim/fft.hpp"
#include "gtsim/quadrature.hpp"
#include "gtsim/spectral.hpp"

namespace gt {

void SolverParams::validate() const {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw ConfigError("solver: dt must be finite and nonzero");
  if (!std::isfinite(t_final)) throw ConfigError("solver: t_final must be finite");
  if (t_final != 0.0 && (dt > 0.0) != (t_final > 0.0)) {
    throw ConfigError("solver: dt and t_final must have the same sign");
  }
  if (!(safety > 0.0)) throw ConfigError("solver: safety must be positive");
  if (capture_every < 1) throw ConfigError("solver: capture_every must be >= 1");
}

Stepper::Stepper(const Grid& grid, const GTConfig& cfg) : grid_(grid), cfg_(cfg), ev_(grid, cfg) {}

void Stepper::rhs(const std::vector<cplx>& w, double tau, std::vector<cplx>& out) const {
  // i e^{-i gamma tau Lap} N(e^{i gamma tau Lap} w)
  std::vector<cplx> u = w;
  apply_free_propagator(grid_, u, tau, cfg_.gamma);
  std::fill(out.begin(), out.end(), cplx{});
  ev_.nonlinearity(u, out);
  apply_free_propagator(grid_, out, tau, -cfg_.gamma);
  for (auto& v : out) v *= cplx{0.0, 1.0};
}

void Stepper::advance(std::vector<cplx>& c, double h) const {
  const std::size_t n = c.size();
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
  rhs(c, 0.0, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
  rhs(tmp, 0.5 * h, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
  rhs(tmp, 0.5 * h, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + h * k3[i];
  rhs(tmp, h, k4);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  apply_free_propagator(grid_, c, h, cfg_.gamma);
}

double Stepper::sup_norm(const std::vector<cplx>& coeffs) const {
  std::vector<cplx> u = coeffs;
  const auto shape = grid_.shape();
  fft::backward(u, std::span<const std::size_t>(shape.data(), static_cast<std::size_t>(grid_.dim())));
  double m = 0.0;
  for (const auto& v : u) m = std::max(m, std::abs(v));
  return m;
}

double Stepper::admissible_step(const std::vector<cplx>& coeffs, double safety) const {
  return safety / (std::pow(sup_norm(coeffs), cfg_.p) + 1.0);
}

Field step(const Field& u, double /*t*/, double dt, const GTConfig& cfg, double safety) {
  Stepper st(u.grid(), cfg);
  auto c = fourier_coefficients(u);
  const double allowed = st.admissible_step(c, safety);
  if (std::abs(dt) > allowed) {
    std::ostringstream os;
    os << "step rejected: |dt| = " << std::abs(dt) << " exceeds the admissible " << allowed;
    throw StepRejected(os.str(), allowed);
  }
  st.advance(c, dt);
  return from_fourier_coefficients(u.grid(), std::move(c));
}

namespace {

bool finite(const std::vector<cplx>& c) {
  for (const auto& v : c) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace

Trajectory evolve(const Field& u0, const SolverParams& params, const GTConfig& cfg) {
  params.validate();
  const Grid& g = u0.grid();
  Stepper st(g, cfg);
  Trajectory tr;
  auto capture = [&](const std::vector<cplx>& c, double t) {
    tr.times.push_back(t);
    Field f = from_fourier_coefficients(g, c);
    if (params.record_diagnostics) tr.records.push_back(record(f, t, st.evaluator(), params.s_list));
    if (params.keep_snapshots) tr.snapshots.push_back(std::move(f));
  };
  auto c = fourier_coefficients(u0);
  capture(c, 0.0);
  if (params.t_final == 0.0) return tr;
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(params.t_final / params.dt) - 1e-9));
  const double h = params.t_final / static_cast<double>(steps);
  const double h_min = std::abs(params.dt) * 1e-6;
  tr.smallest_step = std::abs(h);
  int level = 0;
  for (std::size_t s = 1; s <= steps; ++s) {
    // tile the base step with 2^level equal substeps, refining on demand
    level = 0;
    std::size_t pos = 0;
    while (pos < (std::size_t{1} << level)) {
      const double sub = h / static_cast<double>(std::size_t{1} << level);
      if (std::abs(sub) > st.admissible_step(c, params.safety)) {
        ++level;
        ++tr.rejections;
        pos *= 2;
        if (std::abs(h) / static_cast<double>(std::size_t{1} << level) < h_min) {
          tr.blowup_suspected = true;
          tr.termination = "step rejected below dt_min";
          break;
        }
        continue;
      }
      st.advance(c, sub);
      ++tr.substeps;
      tr.smallest_step = std::min(tr.smallest_step, std::abs(sub));
      if (!finite(c)) {
        tr.blowup_suspected = true;
        tr.termination = "non-finite state";
        break;
      }
      ++pos;
    }
    if (tr.blowup_suspected) {
      if (finite(c)) {
        const double t_now = h * (static_cast<double>(s - 1) +
                                  static_cast<double>(pos) / static_cast<double>(std::size_t{1} << level));
        if (t_now != tr.times.back()) capture(c, t_now);
      }
      return tr;
    }
    if (s % params.capture_every == 0 || s == steps) capture(c, h * static_cast<double>(s));
  }
  return tr;
}

DuhamelResult duhamel_residual(const Trajectory& traj, const GTConfig& cfg, std::size_t degree) {
  DuhamelResult out;
  const std::size_t K = traj.snapshots.size();
  if (K == 0) return out;
  if (traj.times.size() != K) throw DomainError("duhamel residual: times and snapshots differ in length");
  out.insufficient_captures = K < 8;
  const Grid& g = traj.snapshots[0].grid();
  SigmaEvaluator ev(g, cfg);
  const double t0 = traj.times[0];
  std::vector<std::vector<cplx>> coeffs(K), h(K);
  for (std::size_t k = 0; k < K; ++k) {
    coeffs[k] = fourier_coefficients(traj.snapshots[k]);
    h[k].assign(coeffs[k].size(), cplx{});
    ev.nonlinearity(coeffs[k], h[k]);
    apply_free_propagator(g, h[k], traj.times[k] - t0, -cfg.gamma);
  }
  std::vector<double> rel(K);
  for (std::size_t k = 0; k < K; ++k) rel[k] = traj.times[k] - t0;
  const auto W = cumulative_integration_weights(rel, degree);
  double volume = 1.0;
  for (int a = 0; a < g.dim(); ++a) volume *= g.length(a);
  const std::size_t n = coeffs[0].size();
  out.per_time.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<cplx> pred = coeffs[0];
    for (std::size_t j = 0; j < K; ++j) {
      const double w = W[k * K + j];
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) pred[i] += cplx{0.0, w} * h[j][i];
    }
    apply_free_propagator(g, pred, rel[k], cfg.gamma);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(coeffs[k][i] - pred[i]);
    out.per_time[k] = std::sqrt(volume * s);
    out.residual = std::max(out.residual, out.per_time[k]);
  }
  return out;
}

}  // namespace gt
