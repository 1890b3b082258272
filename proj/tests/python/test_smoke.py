import math

import numpy as np
import pytest

import gtsim


def test_plane_wave_phase():
    g = gtsim.Grid.line(16, 2 * math.pi)
    a = 0.8 + 0.2j
    u0 = gtsim.plane_wave(g, a, [3])
    cfg = gtsim.GTConfig(p=2, gamma=-1.0)
    tr = gtsim.evolve(u0, gtsim.SolverParams(dt=0.01, t_final=0.5, capture_every=50), cfg)
    x = np.array(g.coordinates(0))
    rate = abs(a) ** 2 + 9.0
    exact = a * np.exp(1j * (3 * x + rate * tr["times"][-1]))
    assert np.max(np.abs(tr["snapshots"][-1] - exact)) < 1e-9
    assert not tr["blowup_suspected"]


def test_gaussian_record_and_norms():
    g = gtsim.Grid.line(256, 96.0)
    u = gtsim.gaussian_data(g, 0.5, 2.0)
    cfg = gtsim.GTConfig()
    r = gtsim.record(u, 0.0, cfg, [0.0])
    assert r["mass"] == pytest.approx(0.25 * 2.0 * math.sqrt(2 * math.pi), rel=1e-12)
    assert r["hs_norms"][0.0] == pytest.approx(math.sqrt(r["mass"]), rel=1e-12)
    assert gtsim.sobolev_norm(u, 0.0) == pytest.approx(math.sqrt(r["mass"]), rel=1e-12)
    assert gtsim.critical_regularities(1, 2) == pytest.approx((-0.5, -1.5))
    assert gtsim.virial_constant(1, 8) == pytest.approx(8.0)


def test_field_roundtrip_and_errors(tmp_path):
    g = gtsim.Grid.line(32, 4.0)
    vals = np.exp(1j * np.arange(32) / 5.0)
    f = gtsim.Field(g, vals)
    assert np.array_equal(f.values(), vals)
    path = tmp_path / "u.gts"
    gtsim.write_snapshot(f, 0.25, str(path), -1.0, 2)
    back, t, gamma, p = gtsim.read_snapshot(str(path))
    assert np.array_equal(back.values(), vals)
    assert (t, gamma, p) == (0.25, -1.0, 2)
    with pytest.raises(gtsim.DomainError):
        gtsim.Field(g, np.zeros(31, dtype=complex))
    with pytest.raises(gtsim.ConfigError):
        gtsim.GTConfig(p=3)
    with pytest.raises(gtsim.ConfigError):
        gtsim.GTConfig(gamma=0.0)


def test_picard_matches_solver():
    g = gtsim.Grid.line(256, 96.0)
    u0 = gtsim.gaussian_data(g, 0.3, 2.0)
    T = 0.1 / gtsim.sobolev_norm(u0, 0.0) ** 2
    cfg = gtsim.GTConfig()
    ps = gtsim.picard_series(u0, T, J=4, Q=16, cfg=cfg, sample_times=[T])
    tr = gtsim.evolve(u0, gtsim.SolverParams(dt=T / 100, t_final=T, capture_every=100), cfg)
    dx = g.dx(0)
    gap = math.sqrt(np.sum(np.abs(ps["sums"][0]["value"] - tr["snapshots"][-1]) ** 2) * dx)
    assert gap < 1e-6
    norms = ps["term_norms"]
    assert all(norms[j + 1] < norms[j] for j in range(len(norms) - 1))


def test_config_and_experiment():
    text = gtsim.config_toml("[equation]\np = 4\n", ["grid.n=[128]"])
    assert "p = 4" in text
    with pytest.raises(gtsim.ConfigError):
        gtsim.config_toml("[equation]\nwat = 1\n")
    rep = gtsim.run_experiment(
        "ipscale", overrides=["experiment.ipscale.n_list=[4.0, 8.0]", "experiment.ipscale.s_list=[-0.5]",
                              "experiment.ipscale.time_samples=3"])
    assert rep["experiment"] == "ipscale"
    assert any(c["name"].startswith("l2_doubling") for c in rep["checks"])
    k, v = gtsim.xi1_box(64.0 * 16, 0.2, -2.5, 16.0, 1e-8)
    assert len(k) == len(v) > 0


def test_fit():
    e, c, r2 = gtsim.fit_loglog([1.0, 2.0, 4.0], [3.0, 12.0, 48.0])
    assert e == pytest.approx(2.0)
    assert r2 == pytest.approx(1.0)
