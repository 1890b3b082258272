#include "gtsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtsim/errors.hpp"
#include "gtsim/spectral.hpp"

namespace gt {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double vdot2_from_integrals(int d, int p, double s1, double e1) {
  return 4.0 * (d * p - 4.0) / (p + 2.0) * s1 + 8.0 / (p + 2.0) * e1;
}

double vddot1_from_integrals(int d, int p, double energy, double s0, double e1) {
  return -16.0 * energy - 4.0 * (d * p - 8.0) / (p + 2.0) * s0 - 16.0 / (p + 2.0) * e1;
}

double virial_constant(int d, int p) { return 8.0 + 2.0 * (d * p - 8.0) / (p + 2.0); }

DiagnosticsRecord record(const Field& u, double t, const GTConfig& cfg,
                         const std::vector<double>& s_list) {
  return record(u, t, SigmaEvaluator(u.grid(), cfg), s_list);
}

DiagnosticsRecord record(const Field& u, double t, const SigmaEvaluator& ev,
                         const std::vector<double>& s_list) {
  const GTConfig& cfg = ev.config();
  const Grid& g = u.grid();
  DiagnosticsRecord r;
  r.t = t;
  const auto c = fourier_coefficients(u);
  r.mass = mass(u);
  const double h1 = sobolev_norm_from_coefficients(g, c, {1.0, true});
  r.gradient_sq = h1 * h1;
  r.kinetic = 0.5 * std::abs(cfg.gamma) * r.gradient_sq;
  const auto integrals = ev.power_integrals(c);
  r.potential = integrals.plain / (cfg.p + 2);
  r.energy = -0.5 * cfg.gamma * r.gradient_sq + r.potential;
  const auto v = moment_variance(u);
  const auto m = radial_momentum(u);
  r.variance = v.value;
  r.vdot1 = m.value;
  r.degraded = v.degraded || m.degraded;
  r.boundary_frac = boundary_mass_fraction(u);
  r.equip_ratio = integrals.plain > 0.0 ? r.gradient_sq / integrals.plain : kNaN;
  if (cfg.variant == Variant::AveragedUnit) {
    const double e1 = ev.endpoint_power_integral(c, 1.0);
    r.vdot2 = vdot2_from_integrals(cfg.d, cfg.p, integrals.weighted, e1);
    r.vddot1 = vddot1_from_integrals(cfg.d, cfg.p, r.energy, integrals.plain, e1);
  } else {
    r.vdot2 = kNaN;
    r.vddot1 = kNaN;
  }
  for (double s : s_list) r.hs_norms.emplace_back(s, sobolev_norm_from_coefficients(g, c, {s, false}));
  return r;
}

namespace {

void require_unit(const GTConfig& cfg) {
  if (cfg.variant != Variant::AveragedUnit) {
    throw ConfigError("virial identities are defined for the averaged-unit variant only");
  }
}

}  // namespace

double vdot2(const Field& u, const GTConfig& cfg) {
  require_unit(cfg);
  SigmaEvaluator ev(u.grid(), cfg);
  const auto c = fourier_coefficients(u);
  return vdot2_from_integrals(cfg.d, cfg.p, ev.power_integrals(c).weighted,
                              ev.endpoint_power_integral(c, 1.0));
}

double vddot1_rhs(const Field& u, const GTConfig& cfg) {
  require_unit(cfg);
  SigmaEvaluator ev(u.grid(), cfg);
  const auto c = fourier_coefficients(u);
  const double s0 = ev.power_integrals(c).plain;
  const double h1 = sobolev_norm_from_coefficients(u.grid(), c, {1.0, true});
  const double e = -0.5 * cfg.gamma * h1 * h1 + s0 / (cfg.p + 2);
  return vddot1_from_integrals(cfg.d, cfg.p, e, s0, ev.endpoint_power_integral(c, 1.0));
}

double equipartition_ratio(const Field& u, const GTConfig& cfg) {
  SigmaEvaluator ev(u.grid(), cfg);
  const auto c = fourier_coefficients(u);
  const double s0 = ev.power_integrals(c).plain;
  if (!(s0 > 0.0)) return kNaN;
  const double h1 = sobolev_norm_from_coefficients(u.grid(), c, {1.0, true});
  return h1 * h1 / s0;
}

VirialReport virial_inequality_check(const std::vector<DiagnosticsRecord>& records,
                                     const GTConfig& cfg) {
  if (records.empty()) throw DomainError("virial check: no records");
  for (const auto& r : records) {
    if (r.t > 0.0) throw DomainError("virial check: the trajectory must run backward (t <= 0)");
  }
  VirialReport rep;
  rep.focusing = cfg.gamma > 0.0;
  if (!rep.focusing && cfg.d * cfg.p < 8) {
    throw DomainError("virial check: the defocusing bound needs p >= 8/d");
  }
  const auto& r0 = records.front();
  rep.v0 = r0.variance;
  rep.vdot1_0 = r0.vdot1;
  rep.energy = r0.energy;
  rep.C = virial_constant(cfg.d, cfg.p);
  rep.min_variance_margin = std::numeric_limits<double>::infinity();
  rep.min_momentum_margin = std::numeric_limits<double>::infinity();
  double c_fit = 0.0;
  for (const auto& r : records) {
    const double t = r.t;
    VirialMargin m;
    m.t = t;
    m.momentum_margin = r.vdot1 - (rep.vdot1_0 - 16.0 * rep.energy * t);
    if (rep.focusing) {
      m.variance_margin = rep.v0 + rep.vdot1_0 * t - 8.0 * rep.energy * t * t - r.variance;
    } else {
      if (t < -0.5) continue;
      m.variance_margin = rep.v0 - rep.vdot1_0 * t + rep.C * rep.energy * t * t - r.variance;
      if (t != 0.0 && rep.energy > 0.0) {
        c_fit = std::max(c_fit, (r.variance - rep.v0 + rep.vdot1_0 * t) / (rep.energy * t * t));
      }
    }
    rep.min_variance_margin = std::min(rep.min_variance_margin, m.variance_margin);
    rep.min_momentum_margin = std::min(rep.min_momentum_margin, m.momentum_margin);
    rep.margins.push_back(m);
  }
  rep.C_fitted = c_fit;
  const double vtol = 1e-6 * std::abs(rep.v0);
  const double mtol = 1e-6 * std::max(std::abs(rep.vdot1_0), std::abs(16.0 * rep.energy));
  rep.variance_bound_holds = rep.min_variance_margin >= -vtol;
  rep.momentum_bound_holds = rep.min_momentum_margin >= -mtol;
  return rep;
}

IdentityCheck check_virial_identities(const std::vector<DiagnosticsRecord>& records, double gamma) {
  IdentityCheck out;
  if (records.size() < 3) return out;
  double err_v = 0.0, scale_v = 0.0, err_m = 0.0, scale_m = 0.0;
  for (std::size_t k = 1; k + 1 < records.size(); ++k) {
    const auto& a = records[k - 1];
    const auto& b = records[k];
    const auto& c = records[k + 1];
    const double h = c.t - a.t;
    const double dv = (c.variance - a.variance) / h;
    const double dm = (c.vdot1 - a.vdot1) / h;
    const double rhs_v = gamma * b.vdot1 + b.vdot2;
    err_v = std::max(err_v, std::abs(dv - rhs_v));
    scale_v = std::max(scale_v, std::abs(rhs_v));
    err_m = std::max(err_m, std::abs(dm - b.vddot1));
    scale_m = std::max(scale_m, std::abs(b.vddot1));
    ++out.points;
  }
  out.variance_rel_error = scale_v > 0.0 ? err_v / scale_v : err_v;
  out.momentum_rel_error = scale_m > 0.0 ? err_m / scale_m : err_m;
  return out;
}

}  // namespace gt
