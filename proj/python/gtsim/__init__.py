"""Python access to the gtsim core."""

import json

from ._gtsim import (
    ConfigError,
    DomainError,
    Field,
    FormatError,
    Grid,
    GTConfig,
    SolverParams,
    annulus_bump,
    config_toml,
    critical_regularities,
    evolve,
    fit_loglog,
    free_propagate,
    gaussian_data,
    picard_series,
    plane_wave,
    read_snapshot,
    record,
    sobolev_norm,
    step,
    virial_constant,
    write_snapshot,
    xi1_box,
)
from ._gtsim import _run_experiment

EXPERIMENTS = ("inflate-neg", "ipscale", "equipartition", "inflate-energy", "symmetry")


def run_experiment(name, config="", overrides=()):
    """Runs an experiment from TOML text plus dotted overrides; returns the report dict."""
    return json.loads(_run_experiment(name, config, list(overrides)))
