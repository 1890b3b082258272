#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gtsim/diagnostics.hpp"
#include "gtsim/errors.hpp"
#include "gtsim/evolution.hpp"
#include "gtsim/experiments.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/io.hpp"
#include "gtsim/lattice_series.hpp"
#include "gtsim/picard.hpp"
#include "gtsim/spectral.hpp"

namespace py = pybind11;
using namespace gt;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

py::array_t<cplx> to_numpy(const Field& u) {
  std::vector<py::ssize_t> shape;
  for (int a = 0; a < u.grid().dim(); ++a) shape.push_back(static_cast<py::ssize_t>(u.grid().n(a)));
  py::array_t<cplx> out(shape);
  std::copy(u.values().begin(), u.values().end(), out.mutable_data());
  return out;
}

Field from_numpy(const Grid& g, const carray& a) {
  if (static_cast<std::size_t>(a.size()) != g.size()) {
    throw DomainError("array size does not match the grid");
  }
  return Field(g, std::vector<cplx>(a.data(), a.data() + a.size()));
}

py::dict record_dict(const DiagnosticsRecord& r) {
  py::dict d;
  d["t"] = r.t;
  d["mass"] = r.mass;
  d["kinetic"] = r.kinetic;
  d["potential"] = r.potential;
  d["energy"] = r.energy;
  d["variance"] = r.variance;
  d["vdot1"] = r.vdot1;
  d["vdot2"] = r.vdot2;
  d["vddot1"] = r.vddot1;
  d["gradient_sq"] = r.gradient_sq;
  d["equip_ratio"] = r.equip_ratio;
  d["boundary_frac"] = r.boundary_frac;
  d["degraded"] = r.degraded;
  py::dict hs;
  for (const auto& [s, v] : r.hs_norms) hs[py::float_(s)] = v;
  d["hs_norms"] = hs;
  return d;
}

std::string report_text(const ExperimentReport& r) { return r.to_json().dump(); }

}  // namespace

PYBIND11_MODULE(_gtsim, m) {
  m.doc() = "averaged dispersion-managed NLS simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_IOError);

  py::class_<Grid>(m, "Grid")
      .def_static("line", &Grid::line, py::arg("n"), py::arg("L"))
      .def_static(
          "make",
          [](int d, const std::vector<std::size_t>& n, const std::vector<double>& L) { return Grid::make(d, n, L); },
          py::arg("d"), py::arg("n"), py::arg("L"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("size", &Grid::size)
      .def("n", &Grid::n)
      .def("length", &Grid::length)
      .def("dx", &Grid::dx)
      .def("dxi", &Grid::dxi)
      .def("coordinates", &Grid::coordinates)
      .def("wavenumbers", &Grid::wavenumbers)
      .def("__eq__", &Grid::operator==);

  py::class_<Field>(m, "Field")
      .def(py::init([](const Grid& g, const carray& a) { return from_numpy(g, a); }), py::arg("grid"),
           py::arg("values"))
      .def_property_readonly("grid", &Field::grid)
      .def("values", &to_numpy);

  py::class_<GTConfig>(m, "GTConfig")
      .def(py::init([](int d, int p, double gamma, const std::string& variant, double upper,
                       std::size_t points_per_panel) {
             GTConfig c;
             c.d = d;
             c.p = p;
             c.gamma = gamma;
             c.variant = variant_from_string(variant);
             c.upper = upper;
             c.points_per_panel = points_per_panel;
             c.validate();
             return c;
           }),
           py::arg("d") = 1, py::arg("p") = 2, py::arg("gamma") = -1.0, py::arg("variant") = "averaged-unit",
           py::arg("upper") = 1.0, py::arg("points_per_panel") = 4)
      .def_readonly("d", &GTConfig::d)
      .def_readonly("p", &GTConfig::p)
      .def_readonly("gamma", &GTConfig::gamma)
      .def_property_readonly("variant", [](const GTConfig& c) { return to_string(c.variant); });

  py::class_<SolverParams>(m, "SolverParams")
      .def(py::init([](double dt, double t_final, std::size_t capture_every, double safety, bool keep_snapshots,
                       bool record_diagnostics, std::vector<double> s_list) {
             SolverParams s;
             s.dt = dt;
             s.t_final = t_final;
             s.capture_every = capture_every;
             s.safety = safety;
             s.keep_snapshots = keep_snapshots;
             s.record_diagnostics = record_diagnostics;
             s.s_list = std::move(s_list);
             s.validate();
             return s;
           }),
           py::arg("dt") = 1e-3, py::arg("t_final") = 1.0, py::arg("capture_every") = 1, py::arg("safety") = 0.1,
           py::arg("keep_snapshots") = true, py::arg("record_diagnostics") = true,
           py::arg("s_list") = std::vector<double>{})
      .def_readonly("dt", &SolverParams::dt)
      .def_readonly("t_final", &SolverParams::t_final);

  m.def("gaussian_data", [](const Grid& g, double A, double sigma) { return gaussian_data(g, {A, sigma}); },
        py::arg("grid"), py::arg("A"), py::arg("sigma"));
  m.def("plane_wave", [](const Grid& g, cplx a, const std::vector<long>& modes) { return plane_wave(g, a, modes); },
        py::arg("grid"), py::arg("a"), py::arg("modes"));
  m.def("annulus_bump", &annulus_bump, py::arg("grid"), py::arg("N"), py::arg("T"));
  m.def("critical_regularities", &critical_regularities, py::arg("d"), py::arg("p"));
  m.def("virial_constant", &virial_constant, py::arg("d"), py::arg("p"));

  m.def("sobolev_norm", [](const Field& u, double s, bool homogeneous) { return sobolev_norm(u, {s, homogeneous}); },
        py::arg("u"), py::arg("s"), py::arg("homogeneous") = false);
  m.def("free_propagate", &free_propagate, py::arg("u"), py::arg("tau"), py::arg("c") = 1.0);
  m.def("record", [](const Field& u, double t, const GTConfig& cfg, const std::vector<double>& s_list) {
    return record_dict(record(u, t, cfg, s_list));
  }, py::arg("u"), py::arg("t"), py::arg("cfg"), py::arg("s_list") = std::vector<double>{});

  m.def("step", &step, py::arg("u"), py::arg("t"), py::arg("dt"), py::arg("cfg"), py::arg("safety") = 0.1);
  m.def(
      "evolve",
      [](const Field& u0, const SolverParams& sp, const GTConfig& cfg) {
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = evolve(u0, sp, cfg);
        }
        py::dict d;
        d["times"] = tr.times;
        py::list snaps, recs;
        for (const auto& s : tr.snapshots) snaps.append(to_numpy(s));
        for (const auto& r : tr.records) recs.append(record_dict(r));
        d["snapshots"] = snaps;
        d["records"] = recs;
        d["blowup_suspected"] = tr.blowup_suspected;
        d["termination"] = tr.termination;
        d["substeps"] = tr.substeps;
        d["rejections"] = tr.rejections;
        d["smallest_step"] = tr.smallest_step;
        return d;
      },
      py::arg("u0"), py::arg("params"), py::arg("cfg"));

  m.def(
      "picard_series",
      [](const Field& u0, double T, int J, std::size_t Q, const GTConfig& cfg, std::optional<double> norm_s,
         std::vector<double> sample_times) {
        const auto ps = xi_series(u0, T, J, Q, cfg, norm_s);
        py::dict d;
        d["term_norms"] = ps.term_norms;
        d["norm_s"] = ps.norm_s;
        d["regime_value"] = ps.regime_value;
        d["regime_warning"] = ps.regime_warning;
        py::list sums;
        for (double t : sample_times) {
          const auto s = sum_series(ps, t);
          py::dict e;
          e["t"] = t;
          e["value"] = to_numpy(s.value);
          e["error_estimate"] = s.error_estimate;
          e["divergent"] = s.divergent;
          sums.append(e);
        }
        d["sums"] = sums;
        return d;
      },
      py::arg("u0"), py::arg("T"), py::arg("J") = 4, py::arg("Q") = 16, py::arg("cfg") = GTConfig{},
      py::arg("norm_s") = std::nullopt, py::arg("sample_times") = std::vector<double>{});

  m.def(
      "xi1_box",
      [](double N, double delta, double s, double dxi, double t) {
        const auto params = InflationParams::from_scaling(N, delta, s);
        const auto xi = xi1_closed_form(box_spectrum(params, dxi), t, GTConfig{});
        std::vector<double> k;
        std::vector<cplx> v;
        for (std::size_t i = 0; i < xi.values.size(); ++i) {
          if (!xi.support[i]) continue;
          k.push_back(static_cast<double>(xi.kmin + static_cast<long>(i)) * dxi);
          v.push_back(xi.values[i]);
        }
        return py::make_tuple(k, v);
      },
      py::arg("N"), py::arg("delta"), py::arg("s"), py::arg("dxi"), py::arg("t"),
      "Closed-form first iterate of cubic box data: (xi, spectrum) on its support.");

  m.def("fit_loglog", [](const std::vector<double>& x, const std::vector<double>& y) {
    const auto f = fit_loglog(x, y);
    return py::make_tuple(f.exponent, f.intercept, f.r2);
  });

  // experiments return their JSON report text; the Python wrapper decodes it
  m.def("_run_experiment", [](const std::string& name, const std::string& toml_text,
                              const std::vector<std::string>& overrides) {
    const RunConfig cfg = parse_config(toml_text, overrides, "<python>");
    py::gil_scoped_release release;
    if (name == "inflate-neg") return report_text(run_inflation_negative(cfg.inflate_neg));
    if (name == "ipscale") return report_text(run_analytic_ip(cfg.ipscale));
    if (name == "equipartition") return report_text(run_equipartition(cfg.equipartition));
    if (name == "inflate-energy") return report_text(run_inflation_energy(cfg.inflate_energy));
    if (name == "symmetry") return report_text(run_symmetry_check(cfg.symmetry));
    throw ConfigError("unknown experiment '" + name + "'");
  });

  m.def("config_toml", [](const std::string& text, const std::vector<std::string>& overrides) {
    return to_toml(parse_config(text, overrides, "<python>"));
  }, py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{});

  m.def("write_snapshot", &write_snapshot, py::arg("u"), py::arg("t"), py::arg("path"), py::arg("gamma") = 0.0,
        py::arg("p") = 0);
  m.def("read_snapshot", [](const std::filesystem::path& path) {
    auto s = read_snapshot(path);
    return py::make_tuple(s.field, s.t, s.gamma, s.p);
  }, py::arg("path"));
}
