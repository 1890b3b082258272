#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gtsim/diagnostics.hpp"
#include "gtsim/field.hpp"
#include "gtsim/nonlinearity.hpp"

namespace gt {

struct SolverParams {
  double dt = 1e-3;
  double safety = 0.1;
  std::size_t capture_every = 1;
  double t_final = 1.0;
  bool keep_snapshots = true;
  bool record_diagnostics = true;
  std::vector<double> s_list;

  /// Throws ConfigError on dt == 0, mismatched signs or a zero cadence.
  void validate() const;
};

/// Thrown by step() when |dt| (||u||_inf^p + 1) exceeds the safety factor.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string& what, double required_dt)
      : std::runtime_error(what), required_dt(required_dt) {}
  double required_dt;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> snapshots;
  std::vector<DiagnosticsRecord> records;
  bool blowup_suspected = false;
  std::string termination;  ///< empty on normal completion
  std::size_t substeps = 0;
  std::size_t rejections = 0;
  double smallest_step = 0.0;
};

/// Coefficient-space interaction-picture RK4 on one grid.
class Stepper {
 public:
  Stepper(const Grid& grid, const GTConfig& cfg);
  const SigmaEvaluator& evaluator() const { return ev_; }
  /// Advances coefficients by dt in place.
  void advance(std::vector<cplx>& coeffs, double dt) const;
  /// max |u| over the grid samples.
  double sup_norm(const std::vector<cplx>& coeffs) const;
  /// Largest admissible |dt| for the current state.
  double admissible_step(const std::vector<cplx>& coeffs, double safety) const;

 private:
  void rhs(const std::vector<cplx>& w, double tau, std::vector<cplx>& out) const;
  Grid grid_;
  GTConfig cfg_;
  SigmaEvaluator ev_;
};

/// One RK4 step of size dt (t is unused: the equation is autonomous).
Field step(const Field& u, double t, double dt, const GTConfig& cfg, double safety = 0.1);

Trajectory evolve(const Field& u0, const SolverParams& params, const GTConfig& cfg);

struct DuhamelResult {
  double residual = 0.0;               ///< max over captures
  std::vector<double> per_time;
  bool insufficient_captures = false;  ///< fewer than 8 captures
};

/// Duhamel-formula residual of captured snapshots under `cfg` (which may be a
/// variant); the time integral uses local Lagrange interpolation of the
/// given degree through the captures.
DuhamelResult duhamel_residual(const Trajectory& traj, const GTConfig& cfg, std::size_t degree = 6);

}  // namespace gt
