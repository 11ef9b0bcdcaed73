"""Entanglement dynamics of a two-spin molecule coupled to thermal baths."""

from ._core import (
    Error,
    ModelParams,
    canonical_config,
    concurrence,
    critical_s,
    ground_state_concurrence,
    hamiltonian,
    point_at_distance,
    rate,
    run_config,
    spectrum,
    spin_gas_steady_state,
    thermal_concurrence,
    thermal_state,
    trace_distance,
    version,
)

__all__ = [
    "Error",
    "ModelParams",
    "canonical_config",
    "concurrence",
    "critical_s",
    "ground_state_concurrence",
    "hamiltonian",
    "point_at_distance",
    "rate",
    "run_config",
    "spectrum",
    "spin_gas_steady_state",
    "thermal_concurrence",
    "thermal_state",
    "trace_distance",
    "version",
]
