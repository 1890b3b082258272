#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gtsim/field.hpp"
#include "gtsim/nonlinearity.hpp"

namespace gt {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double kinetic = 0.0;    ///< |gamma|/2 int |grad u|^2
  double potential = 0.0;
  double energy = 0.0;
  double variance = 0.0;
  double vdot1 = 0.0;
  double vdot2 = 0.0;      ///< NaN unless the variant is averaged-unit
  double vddot1 = 0.0;     ///< NaN unless the variant is averaged-unit
  double gradient_sq = 0.0;
  double equip_ratio = 0.0;  ///< NaN when the potential vanishes
  double boundary_frac = 0.0;
  bool degraded = false;
  std::vector<std::pair<double, double>> hs_norms;  ///< (s, ||u||_{H^s})
};

DiagnosticsRecord record(const Field& u, double t, const GTConfig& cfg,
                         const std::vector<double>& s_list = {});
DiagnosticsRecord record(const Field& u, double t, const SigmaEvaluator& ev,
                         const std::vector<double>& s_list = {});

/// Virial pieces for the averaged-unit variant. Throws ConfigError otherwise.
double vdot2(const Field& u, const GTConfig& cfg);
double vddot1_rhs(const Field& u, const GTConfig& cfg);
/// ||u||^2_{\dot H^1} / sum_m w_m ||e^{i s_m Lap} u||^{p+2}_{p+2}; NaN if the
/// denominator vanishes.
double equipartition_ratio(const Field& u, const GTConfig& cfg);

/// Coefficients of the virial identities in terms of the sigma integrals
/// S0 = sum w int|v|^{p+2}, S1 = sum w sigma int|v|^{p+2}, E1 = int|e^{i Lap}u|^{p+2}.
double vdot2_from_integrals(int d, int p, double s1, double e1);
double vddot1_from_integrals(int d, int p, double energy, double s0, double e1);
/// C(p, d) = 8 + 2(dp - 8)/(p + 2).
double virial_constant(int d, int p);

struct VirialMargin {
  double t = 0.0;
  double variance_margin = 0.0;  ///< bound - v(t); >= 0 when the bound holds
  double momentum_margin = 0.0;  ///< vdot1(t) - (vdot1(0) - 16 E t)
};

struct VirialReport {
  bool focusing = false;
  double C = 0.0;         ///< C(p,d) used in the defocusing bound
  double C_fitted = 0.0;  ///< smallest C making every defocusing margin >= 0
  double v0 = 0.0;
  double vdot1_0 = 0.0;
  double energy = 0.0;
  double min_variance_margin = 0.0;
  double min_momentum_margin = 0.0;
  bool variance_bound_holds = false;
  bool momentum_bound_holds = false;
  std::vector<VirialMargin> margins;
};

/// Checks the backward-time virial bounds on records with t <= 0.
/// Throws DomainError when a record has t > 0; the defocusing branch
/// requires p >= 8/d and only uses -1/2 <= t.
VirialReport virial_inequality_check(const std::vector<DiagnosticsRecord>& records,
                                     const GTConfig& cfg);

struct IdentityCheck {
  double variance_rel_error = 0.0;  ///< max |dv/dt - (gamma vdot1 + vdot2)| / max |rhs|
  double momentum_rel_error = 0.0;  ///< max |d vdot1/dt - vddot1| / max |rhs|
  std::size_t points = 0;
};

/// Centered finite differences of captured records (uniform spacing).
IdentityCheck check_virial_identities(const std::vector<DiagnosticsRecord>& records, double gamma);

}  // namespace gt
