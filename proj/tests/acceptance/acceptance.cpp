// Acceptance suite: one line per criterion.
//
//   gtsim_acceptance [--only 1,5,9] [--expect-fail 7,8] [--report path.jsonl]
//
// Exit status is 0 when every criterion outside --expect-fail passes.
// Expected failures are still run and printed as FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtsim/diagnostics.hpp"
#include "gtsim/evolution.hpp"
#include "gtsim/experiments.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/io.hpp"
#include "gtsim/lattice_series.hpp"
#include "gtsim/picard.hpp"
#include "gtsim/spectral.hpp"

using namespace gt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  json data = json::object();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

// Smooth random data with Gaussian spectral decay.
Field random_smooth(const Grid& g, unsigned seed, double width) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    c[i] = cplx{nd(rng), nd(rng)} * std::exp(-g.xi_squared()[i] * width * width);
  }
  return from_fourier_coefficients(g, std::move(c));
}

// Summarises the named checks of a report; all must be present and pass.
Outcome from_checks(const ExperimentReport& r, const std::vector<std::string>& names) {
  Outcome o;
  o.pass = !r.inconclusive;
  std::ostringstream os;
  for (const auto& n : names) {
    const Check* c = r.find(n);
    if (!c) {
      o.pass = false;
      os << n << "=missing ";
      continue;
    }
    o.pass = o.pass && c->pass;
    os << n << "=" << fmt(c->value) << (c->pass ? "" : "(x)") << " target " << fmt(c->target);
    if (c->tolerance != 0.0) os << " tol " << fmt(c->tolerance);
    os << "; ";
    o.data[n] = to_json(*c);
  }
  if (r.inconclusive) os << "inconclusive";
  o.detail = os.str();
  return o;
}

std::vector<std::string> names_with_prefix(const ExperimentReport& r, const std::vector<std::string>& prefixes) {
  std::vector<std::string> out;
  for (const auto& c : r.checks) {
    for (const auto& p : prefixes) {
      if (c.name.rfind(p, 0) == 0) out.push_back(c.name);
    }
  }
  return out;
}

// ---- 1 ---------------------------------------------------------------------------

Outcome plane_wave_exactness() {
  const auto g = Grid::line(16, 2.0 * std::numbers::pi);
  const cplx a{0.8, 0.2};
  const std::vector<long> mode{3};
  const double xi = 3.0, T = 1.0;
  double worst = 0.0;
  for (int p : {2, 4}) {
    for (double gamma : {-1.0, 1.0}) {
      GTConfig cfg;
      cfg.p = p;
      cfg.gamma = gamma;
      SolverParams sp;
      sp.dt = 5e-3;
      sp.t_final = T;
      sp.capture_every = 200;
      sp.record_diagnostics = false;
      const auto tr = evolve(plane_wave(g, a, mode), sp, cfg);
      const double rate = std::pow(std::abs(a), p) - gamma * xi * xi;
      const auto xs = g.coordinates(0);
      const auto& u = tr.snapshots.back();
      for (std::size_t j = 0; j < g.size(); ++j) {
        const cplx exact = a * std::polar(1.0, xi * xs[j] + rate * tr.times.back());
        worst = std::max(worst, std::abs(std::arg(u.values()[j] / exact)));
        worst = std::max(worst, std::abs(std::abs(u.values()[j]) / std::abs(a) - 1.0));
      }
    }
  }
  return {worst <= 1e-8, "max phase/modulus error " + fmt(worst) + " (limit 1e-08), p in {2,4}, gamma = +-1",
          json{{"max_error", worst}}};
}

// ---- 2 ---------------------------------------------------------------------------

Outcome conservation() {
  const auto g = Grid::line(256, 96.0);
  GTConfig cfg;
  cfg.gamma = -1.0;
  SolverParams sp;
  sp.dt = 0.01;
  sp.t_final = 5.0;
  sp.capture_every = 10;
  sp.keep_snapshots = false;
  const auto tr = evolve(gaussian_data(g, {0.5, 2.0}), sp, cfg);
  const auto& r0 = tr.records.front();
  double dm = 0.0, de = 0.0;
  for (const auto& r : tr.records) {
    dm = std::max(dm, std::abs(r.mass - r0.mass) / r0.mass);
    de = std::max(de, std::abs(r.energy - r0.energy) / std::abs(r0.energy));
  }
  const bool pass = dm <= 1e-8 && de <= 1e-6 && !tr.blowup_suspected;
  return {pass, "mass drift " + fmt(dm) + " (1e-08), energy drift " + fmt(de) + " (1e-06) over [0, 5]",
          json{{"mass_drift", dm}, {"energy_drift", de}}};
}

// ---- 3 ---------------------------------------------------------------------------

Outcome solver_series() {
  const auto g = Grid::line(256, 96.0);
  GTConfig cfg;
  const auto u0 = gaussian_data(g, {0.3, 2.0});
  const double T = 0.1 / std::pow(l2_norm(u0), 2);
  const auto ps = xi_series(u0, T, 4, 16, cfg);
  SolverParams sp;
  sp.dt = T / 200;
  sp.t_final = T;
  sp.capture_every = 40;
  sp.record_diagnostics = false;
  const auto tr = evolve(u0, sp, cfg);
  double worst = 0.0;
  std::size_t samples = 0;
  for (std::size_t k = 1; k < tr.times.size(); ++k) {
    worst = std::max(worst, l2_distance(sum_series(ps, tr.times[k]).value, tr.snapshots[k]));
    ++samples;
  }
  const bool pass = samples == 5 && worst <= 1e-6;
  return {pass, "max L2 gap " + fmt(worst) + " (1e-06) at " + std::to_string(samples) + " times, T|u0|^2 = 0.1",
          json{{"max_gap", worst}, {"samples", samples}}};
}

// ---- 4 ---------------------------------------------------------------------------

Outcome geometric_decay() {
  const auto g = Grid::line(256, 96.0);
  GTConfig cfg;
  std::vector<std::pair<std::string, Field>> families;
  families.emplace_back("gaussian", gaussian_data(g, {0.3, 2.0}));
  {
    auto u = gaussian_data(g, {0.3, 2.0});
    const auto xs = g.coordinates(0);
    std::vector<cplx> v(u.values().begin(), u.values().end());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= std::polar(1.0, 2.0 * xs[j] + 0.05 * xs[j] * xs[j]);
    families.emplace_back("chirped", Field(g, std::move(v)));
  }
  {
    auto u = random_smooth(g, 2024, 1.0);
    families.emplace_back("random", (0.7 / l2_norm(u)) * u);
  }
  bool pass = true;
  std::ostringstream os;
  json data = json::object();
  for (const auto& [name, u0] : families) {
    const double n0 = l2_norm(u0);
    const double T = 0.1 / (n0 * n0);
    const auto ps = xi_series(u0, T, 4, 16, cfg, 0.0);
    std::vector<double> C;
    for (int j = 1; j <= 4; ++j) {
      C.push_back(std::pow(ps.term_norms[j] / (std::pow(T, j) * std::pow(n0, 2 * j + 1)), 1.0 / j));
    }
    const double spread = *std::max_element(C.begin(), C.end()) / *std::min_element(C.begin(), C.end());
    pass = pass && spread <= 3.0;
    os << name << " spread " << fmt(spread) << "; ";
    data[name] = json{{"C", C}, {"spread", spread}};
  }
  os << "limit 3";
  return {pass, os.str(), data};
}

// ---- 5 ---------------------------------------------------------------------------

Outcome xi1_equivalence() {
  const double dxi = 0.1;
  const auto g = Grid::line(1024, 2.0 * std::numbers::pi / dxi);
  GTConfig cfg;
  cfg.points_per_panel = 8;
  InflationParams p;
  p.N = 128 * dxi;
  p.A = 32.5 * dxi;  // floors to 32 modes per box
  p.R = 1.0;
  const auto box = freq_box_data(g, p);
  const double t = 0.01;
  const auto closed = xi1_closed_form(p, t, g, cfg);
  TimeNodes tn(t, 16);
  const auto L = apply_L(box.field, tn, cfg);
  const auto quad = continuous_spectrum(apply_Np({L, L, L}, tn, cfg).back());
  const double err = rel_l2(quad, closed);
  const bool pass = err <= 1e-7 && 2 * box.a_modes >= 64;
  return {pass,
          "relative L2 " + fmt(err) + " (1e-07), " + std::to_string(2 * box.a_modes) + " box modes, dxi 0.1",
          json{{"rel_l2", err}, {"box_modes", 2 * box.a_modes}}};
}

// ---- 9 ---------------------------------------------------------------------------

Outcome virial_identities() {
  const auto g = Grid::line(256, 64.0);
  bool pass = true;
  std::ostringstream os;
  json data = json::object();
  for (double gamma : {-1.0, 1.0}) {
    GTConfig cfg;
    cfg.p = 8;
    cfg.gamma = gamma;
    const auto u0 = gaussian_data(g, {0.8, 1.5});
    double err[2] = {0.0, 0.0};
    for (int h = 0; h < 2; ++h) {
      SolverParams sp;
      sp.dt = h == 0 ? -0.004 : -0.002;
      sp.t_final = -0.2;
      sp.capture_every = 1;
      sp.keep_snapshots = false;
      const auto tr = evolve(u0, sp, cfg);
      const auto ic = check_virial_identities(tr.records, gamma);
      err[h] = std::max(ic.variance_rel_error, ic.momentum_rel_error);
      if (tr.blowup_suspected) err[h] = INFINITY;
    }
    const double gain = err[0] / err[1];
    pass = pass && err[1] <= 1e-4 && gain >= 3.0;
    os << (gamma < 0 ? "defocusing" : "focusing") << " rel " << fmt(err[1]) << " gain " << fmt(gain) << "; ";
    data[gamma < 0 ? "defocusing" : "focusing"] = json{{"coarse", err[0]}, {"fine", err[1]}, {"gain", gain}};
  }
  os << "limits 1e-04, gain >= 3";
  return {pass, os.str(), data};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gtsim acceptance suite"};
  std::vector<int> only, expect_fail;
  std::string report_path;
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  app.add_option("--report", report_path, "JSONL file for per-criterion results");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected(only.begin(), only.end());
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (!report_path.empty()) std::filesystem::remove(report_path);

  // the experiment runs behind several criteria are shared
  std::map<std::string, ExperimentReport> cache;
  auto report = [&](const std::string& key, const std::function<ExperimentReport()>& make) -> const ExperimentReport& {
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make()).first;
    return it->second;
  };
  auto neg = [&] { return report("neg", [] { return run_inflation_negative(InflationNegSpec{}); }); };
  auto energy = [&] { return report("energy", [] { return run_inflation_energy(InflationEnergySpec{}); }); };

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "plane-wave exactness", plane_wave_exactness},
      {2, "conservation", conservation},
      {3, "solver vs Picard series", solver_series},
      {4, "geometric term decay", geometric_decay},
      {5, "closed-form first iterate vs quadrature", xi1_equivalence},
      {6, "box inflation t- and N-scaling", [&] { return from_checks(neg(), {"t_slope", "n_scaling"}); }},
      {7, "higher iterates: envelope and dominance", [&] { return from_checks(neg(), {"envelope", "dominance"}); }},
      {8, "annulus growth exponents",
       [&] {
         const auto& r = report("ip", [] { return run_analytic_ip(AnalyticIPSpec{}); });
         return from_checks(r, names_with_prefix(r, {"growth_s=", "flat_s="}));
       }},
      {9, "virial identities", virial_identities},
      {10, "energy equipartition",
       [&] {
         const auto& r = report("equip", [] { return run_equipartition(EquipartitionSpec{}); });
         return from_checks(r, {"initial_ratio_small", "ratio_growth", "tail_resolved", "bound_pointwise",
                                "bound_constant"});
       }},
      {11, "gaussian scaling table",
       [&] {
         const auto& r = energy();
         auto names = names_with_prefix(r, {"exponent_"});
         names.push_back("eps_identity");
         Outcome o = from_checks(r, names);
         // the focusing run shares the report; its flag does not bear on the table
         o.pass = names.size() == 5;
         for (const auto& n : names) o.pass = o.pass && r.find(n) && r.find(n)->pass;
         return o;
       }},
      {12, "pseudo-symmetry residuals",
       [&] {
         const auto& r = report("sym", [] { return run_symmetry_check(SymmetrySpec{}); });
         return from_checks(r, names_with_prefix(r, {"residual_lambda=", "control_lambda="}));
       }},
      {13, "focusing blowup proxy",
       [&] { return from_checks(energy(), {"focusing_gradient_bound", "focusing_blowup_flag"}); }},
  };

  int unexpected = 0, failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = expected.count(c.id) > 0;
    if (!o.pass) ++failed;
    if (!o.pass && !known) ++unexpected;
    std::printf("%s %2d %s: %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                !o.pass && known ? " (known failure)" : "");
    std::fflush(stdout);
    if (!report_path.empty()) {
      append_jsonl(json{{"criterion", c.id}, {"name", c.name}, {"pass", o.pass}, {"seconds", secs},
                        {"detail", o.detail}, {"data", o.data}},
                   report_path);
    }
  }
  std::printf("%d failed (%d known), %d unexpected\n", failed, failed - unexpected, unexpected);
  return unexpected == 0 ? 0 : 1;
}
