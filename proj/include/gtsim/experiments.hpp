#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtsim/evolution.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/nonlinearity.hpp"

namespace gt {

using json = nlohmann::ordered_json;

/// Least-squares line through (log x, log y).
struct FitResult {
  double exponent = 0.0;
  double intercept = 0.0;
  double stderr_exponent = 0.0;  ///< NaN with two points
  double r2 = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};

/// Throws DomainError for fewer than two points or a nonpositive value.
FitResult fit_loglog(std::span<const double> x, std::span<const double> y);
json to_json(const FitResult& fit);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

/// One named boolean with the numbers behind it.
struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
};
json to_json(const Check& c);

struct ExperimentReport {
  std::string id;
  std::string mode = "full";  ///< "full" or "scalings-only"
  Verdict verdict = Verdict::Inconclusive;
  bool inconclusive = false;  ///< set when resolution or preconditions fail mid-run
  std::vector<Check> checks;
  json params = json::object();
  json results = json::object();
  std::vector<std::string> notes;

  const Check* find(const std::string& name) const;
  Check& add(std::string name, bool pass, double value, double target, double tolerance);
  /// Inconclusive if flagged, else pass iff every check passes.
  void settle();
  json to_json() const;
};

/// Fraction of the L^2 mass in modes with |k_i| > n_i / 4 on some axis.
double spectral_tail_fraction(const Field& u);

// ---- frequency-box inflation (cubic 1D, negative regularity) ----------------

struct InflationNegSpec {
  std::vector<long> n_modes{64, 128, 256};  ///< N / dxi
  double dxi = 16.0;
  double delta = 0.2;
  double s = -2.5;
  std::vector<double> t_fracs{0.01, 0.0178, 0.0316, 0.0562, 0.1};  ///< t N^2
  double t_scaling_frac = 0.1;  ///< t N^2 for the N-scaling fit
  int J = 3;
  std::size_t Q = 8;
  double t_slope_tol = 0.05;
  double n_exponent_rel_tol = 0.10;
  double hs_exponent_tol = 0.1;
  double dominance_ratio = 0.5;

  void validate() const;
};
ExperimentReport run_inflation_negative(const InflationNegSpec& spec);

// ---- first-iterate growth on annulus data ------------------------------------

struct AnalyticIPSpec {
  std::vector<double> n_list{4.0, 8.0, 16.0};
  std::vector<double> s_list{-1.0, -0.5, 0.0};  ///< rows above s_m are reported only
  double T = 1.0;
  double dxi = 0.25;
  std::size_t time_samples = 9;  ///< uniform samples of [0, T] for the sup in t
  double growth_rel_tol = 0.15;
  double flat_tol = 0.1;
  double l2_doubling_tol = 0.05;

  void validate() const;
};
ExperimentReport run_analytic_ip(const AnalyticIPSpec& spec);

// ---- energy equipartition (defocusing, backward) ---------------------------

struct EquipartitionSpec {
  int d = 1;
  int p = 8;
  double sigma = 1.0;
  double A = 0.0;  ///< 0: chosen so that A^p sigma^4 = 10
  std::size_t n = 512;
  double L = 64.0;
  double dt = -0.002;
  std::size_t capture_every = 10;
  double tail_limit = 1e-6;
  double growth_target = 10.0;
  double bound_constant_min = 1.0;

  void validate() const;
};
ExperimentReport run_equipartition(const EquipartitionSpec& spec);

// ---- Gaussian scalings and the focusing blowup proxy -------------------------

struct InflationEnergySpec {
  int d = 1;
  int p = 8;
  double s = 1.0;
  double A = 1.0;
  std::vector<double> sigma_list{0.0125, 0.025, 0.05};
  std::vector<double> eps_list{0.5, 0.25, 0.125};
  std::size_t scaling_n = 256;  ///< per-sigma grid: n points on L = scaling_n sigma / 4
  /// U(0) widths; each grid keeps the free flow over sigma in [0, 1] from wrapping
  /// (L >= 24 / sigma, dx <= sigma / 4)
  std::vector<double> potential_sigma_list{0.18, 0.25, 0.35};
  double exponent_rel_tol = 0.02;
  bool focusing_run = true;
  double focus_sigma = 1.0;  ///< A from A^p sigma^4 = 10
  std::size_t focus_n = 256;
  double focus_L = 48.0;
  double focus_dt = -0.02;
  double focus_tail_limit = 1e-3;  ///< the focusing run stops once the spectral tail exceeds this

  void validate() const;
};
ExperimentReport run_inflation_energy(const InflationEnergySpec& spec);

// ---- pseudo-symmetry residuals -----------------------------------------------

struct SymmetrySpec {
  std::vector<int> lambda_list{1, 2};
  std::string rescaling = "monomial";  ///< "monomial" or "integrated"
  int p = 2;
  double gamma = -1.0;
  double A = 0.5;
  double sigma = 2.0;
  std::size_t n = 256;
  double L = 96.0;
  double t1 = 0.5;
  double dt = 0.01;
  double residual_factor = 5.0;
  double control_factor = 100.0;
  std::size_t max_grid_points = std::size_t{1} << 20;

  void validate() const;
};
ExperimentReport run_symmetry_check(const SymmetrySpec& spec);

}  // namespace gt
