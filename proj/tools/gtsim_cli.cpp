// gtsim command-line driver.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtsim/diagnostics.hpp"
#include "gtsim/errors.hpp"
#include "gtsim/evolution.hpp"
#include "gtsim/experiments.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/io.hpp"
#include "gtsim/lattice_series.hpp"
#include "gtsim/picard.hpp"
#include "gtsim/spectral.hpp"

namespace fs = std::filesystem;
using namespace gt;

namespace {

enum Exit { kOk = 0, kVerdict = 1, kConfig = 2, kInconclusive = 3 };

struct Common {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
  bool quiet = false;
};

RunConfig load(const Common& c) {
  RunConfig cfg = c.config.empty() ? parse_config("", c.overrides, "<defaults>")
                                   : load_config(c.config, c.overrides);
  if (!c.out.empty()) cfg.output_dir = c.out;
  return cfg;
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

void emit(const json& j, const fs::path& dir, const Common& c) {
  append_jsonl(j, dir / "report.jsonl");
  if (!c.quiet) std::cout << j.dump(2) << "\n";
}

int report_exit(const ExperimentReport& r, const RunConfig& cfg, const Common& c) {
  const fs::path dir = out_dir(cfg);
  emit(r.to_json(), dir, c);
  if (!c.quiet) {
    for (const auto& ch : r.checks) {
      std::cerr << (ch.pass ? "PASS " : "FAIL ") << r.id << "/" << ch.name << " value=" << ch.value
                << " target=" << ch.target << "\n";
    }
    std::cerr << r.id << ": " << to_string(r.verdict) << "\n";
  }
  switch (r.verdict) {
    case Verdict::Pass: return kOk;
    case Verdict::Fail: return kVerdict;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kVerdict;
}

int cmd_simulate(const Common& c) {
  const RunConfig cfg = load(c);
  const Grid grid = cfg.grid.make();
  const Field u0 = cfg.initial.build(grid);
  const Trajectory tr = evolve(u0, cfg.solver, cfg.equation);
  const fs::path dir = out_dir(cfg);
  write_records(tr.records, dir / "records.csv", cfg.solver.s_list);
  if (!tr.snapshots.empty()) {
    write_snapshot(tr.snapshots.back(), tr.times.back(), dir / "final.gts", cfg.equation.gamma,
                   cfg.equation.p);
  }
  json j;
  j["command"] = "simulate";
  j["t_end"] = tr.times.empty() ? 0.0 : tr.times.back();
  j["captures"] = tr.records.size();
  j["substeps"] = tr.substeps;
  j["rejections"] = tr.rejections;
  j["smallest_step"] = tr.smallest_step;
  j["blowup_suspected"] = tr.blowup_suspected;
  j["termination"] = tr.termination;
  emit(j, dir, c);
  return tr.blowup_suspected ? kInconclusive : kOk;
}

int cmd_picard(const Common& c) {
  const RunConfig cfg = load(c);
  const Grid grid = cfg.grid.make();
  const Field u0 = cfg.initial.build(grid);
  const auto& ps = cfg.picard;
  const PicardSeries series = xi_series(u0, ps.T, ps.J, ps.Q, cfg.equation, ps.norm_s);
  const SeriesSum sum = sum_series(series, ps.T);
  const fs::path dir = out_dir(cfg);
  write_snapshot(sum.value, ps.T, dir / "series_sum.gts", cfg.equation.gamma, cfg.equation.p);
  json j;
  j["command"] = "picard";
  j["T"] = ps.T;
  j["J"] = ps.J;
  j["norm_s"] = series.norm_s;
  j["term_norms"] = series.term_norms;
  j["regime_value"] = series.regime_value;
  j["regime_warning"] = series.regime_warning;
  j["error_estimate"] = sum.error_estimate;
  j["observed_ratio"] = sum.observed_ratio;
  j["divergent"] = sum.divergent;
  emit(j, dir, c);
  return sum.divergent ? kInconclusive : kOk;
}

int cmd_xi1(const Common& c) {
  const RunConfig cfg = load(c);
  const auto& x = cfg.xi1;
  if (x.n_mode < 1 || !(x.dxi > 0.0)) throw ConfigError("xi1: n_mode and dxi must be positive");
  GTConfig eq = cfg.equation;
  if (eq.d != 1 || eq.p != 2) throw ConfigError("xi1: closed form needs d = 1, p = 2");
  const double N = static_cast<double>(x.n_mode) * x.dxi;
  const auto params = InflationParams::from_scaling(N, x.delta, x.s);
  if (!params.separated(x.dxi)) throw ConfigError("xi1: box parameters violate A >= 8 dxi or N >= 4A");
  const LatticeSpectrum phi = box_spectrum(params, x.dxi);
  const double t = x.t_frac / (N * N);
  const LatticeSpectrum xi = xi1_closed_form(phi, t, eq);
  const fs::path dir = out_dir(cfg);
  {
    std::ofstream csv(dir / "xi1_spectrum.csv");
    csv << "k,xi,re,im\n";
    for (std::size_t i = 0; i < xi.values.size(); ++i) {
      if (!xi.support[i]) continue;
      const long k = xi.kmin + static_cast<long>(i);
      csv << k << "," << format_double(static_cast<double>(k) * x.dxi) << ","
          << format_double(xi.values[i].real()) << "," << format_double(xi.values[i].imag()) << "\n";
    }
  }
  const double A_eff = std::floor(params.A / x.dxi + 1e-9) * x.dxi;
  json j;
  j["command"] = "xi1";
  j["N"] = N;
  j["A"] = A_eff;
  j["R"] = params.R;
  j["t"] = t;
  j["phi_hs"] = phi.norm({x.s, false});
  j["xi1_hs"] = xi.norm({x.s, false});
  j["low_min"] = xi.min_abs(A_eff / 2.0);
  j["low_predicted"] = t / (N * N) * A_eff * A_eff * std::pow(params.R, 3);
  emit(j, dir, c);
  return kOk;
}

int cmd_virial(const Common& c) {
  const RunConfig cfg = load(c);
  if (!(cfg.solver.t_final < 0.0)) throw ConfigError("virial-check: solver.t_final must be negative");
  const Grid grid = cfg.grid.make();
  const Field u0 = cfg.initial.build(grid);
  SolverParams sp = cfg.solver;
  sp.keep_snapshots = false;
  sp.record_diagnostics = true;
  const Trajectory tr = evolve(u0, sp, cfg.equation);
  const VirialReport vr = virial_inequality_check(tr.records, cfg.equation);
  const IdentityCheck ic = check_virial_identities(tr.records, cfg.equation.gamma);
  const fs::path dir = out_dir(cfg);
  write_records(tr.records, dir / "records.csv", sp.s_list);
  json j;
  j["command"] = "virial-check";
  j["focusing"] = vr.focusing;
  j["C"] = vr.C;
  j["C_fitted"] = vr.C_fitted;
  j["v0"] = vr.v0;
  j["energy"] = vr.energy;
  j["variance_bound_holds"] = vr.variance_bound_holds;
  j["momentum_bound_holds"] = vr.momentum_bound_holds;
  j["min_variance_margin"] = vr.min_variance_margin;
  j["min_momentum_margin"] = vr.min_momentum_margin;
  j["variance_identity_rel_error"] = ic.variance_rel_error;
  j["momentum_identity_rel_error"] = ic.momentum_rel_error;
  j["blowup_suspected"] = tr.blowup_suspected;
  emit(j, dir, c);
  if (tr.blowup_suspected) return kInconclusive;
  return vr.variance_bound_holds && vr.momentum_bound_holds ? kOk : kVerdict;
}

int cmd_norms(const Common& c) {
  const RunConfig cfg = load(c);
  const Grid grid = cfg.grid.make();
  const Field u0 = cfg.initial.build(grid);
  const DiagnosticsRecord r = record(u0, 0.0, cfg.equation, cfg.solver.s_list);
  json j;
  j["command"] = "norms";
  j["mass"] = r.mass;
  j["kinetic"] = r.kinetic;
  j["potential"] = r.potential;
  j["energy"] = r.energy;
  j["variance"] = r.variance;
  j["gradient_sq"] = r.gradient_sq;
  j["equip_ratio"] = r.equip_ratio;
  j["boundary_frac"] = r.boundary_frac;
  json hs = json::object();
  for (const auto& [s, v] : r.hs_norms) hs[format_double(s)] = v;
  j["hs_norms"] = hs;
  const auto [sm, si] = critical_regularities(cfg.equation.d, cfg.equation.p);
  j["s_m"] = sm;
  j["s_i"] = si;
  emit(j, out_dir(cfg), c);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gtsim: averaged dispersion-managed NLS simulator"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "TOML configuration file");
    sub->add_option("--out", common.out, "output directory (overrides output_dir)");
    sub->add_option("--set", common.overrides, "dotted key=value override (repeatable)")->take_all();
    sub->add_flag("--quiet", common.quiet, "suppress stdout reports");
  };

  struct Sub {
    const char* name;
    const char* help;
    std::function<int()> run;
  };
  auto experiment = [&](auto fn, auto member) {
    return [&common, fn, member]() {
      const RunConfig cfg = load(common);
      return report_exit(fn(cfg.*member), cfg, common);
    };
  };
  const std::vector<Sub> subs = {
      {"simulate", "evolve initial data; writes records.csv and final.gts", [&] { return cmd_simulate(common); }},
      {"picard", "Picard series terms and partial sum", [&] { return cmd_picard(common); }},
      {"xi1", "first iterate of box data in closed form", [&] { return cmd_xi1(common); }},
      {"inflate-neg", "frequency-box inflation experiment",
       experiment(run_inflation_negative, &RunConfig::inflate_neg)},
      {"inflate-energy", "Gaussian scaling table and focusing run",
       experiment(run_inflation_energy, &RunConfig::inflate_energy)},
      {"equipartition", "backward defocusing equipartition experiment",
       experiment(run_equipartition, &RunConfig::equipartition)},
      {"ipscale", "first-iterate growth on annulus data", experiment(run_analytic_ip, &RunConfig::ipscale)},
      {"symmetry", "pseudo-symmetry residuals", experiment(run_symmetry_check, &RunConfig::symmetry)},
      {"virial-check", "backward virial bounds and identities", [&] { return cmd_virial(common); }},
      {"norms", "diagnostics of the initial data", [&] { return cmd_norms(common); }},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    handles.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (handles[i]->parsed()) return subs[i].run();
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerdict;
  }
  return kConfig;
}
