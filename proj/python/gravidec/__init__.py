"""Gravitational-wave decoherence of circular two-body orbits."""

from ._core import (
    DomainError,
    Error,
    G,
    InvalidArgument,
    LookupError,
    SubVacuumError,
    __version__,
    c,
    chh_to_temperature,
    compton_length,
    crossover_mass,
    decoherence_time,
    em_damping_rate,
    estimate_psd,
    grav_damping_rate,
    graviton_number,
    hbar,
    k_B,
    planck_length,
    planck_mass,
    presets,
    rates,
    run_cli,
    simulate,
    synthesize_flat,
)

__all__ = [name for name in dir() if not name.startswith("_")]
