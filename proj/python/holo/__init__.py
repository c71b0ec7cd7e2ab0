"""Holonomic qutrit gate simulator."""

import json

from . import _holo
from ._holo import (
    ConfigError,
    NumericalError,
    device_report,
    overhead,
    sector_split,
    single_shot_gate,
    spurion,
    stark_delta_ac_khz,
    su2_gate,
    unitary_avg_fidelity,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "device_report",
    "noiseless_metrics",
    "overhead",
    "qec_point",
    "run_sweep",
    "sector_split",
    "single_shot_gate",
    "spurion",
    "stark_delta_ac_khz",
    "su2_gate",
    "unitary_avg_fidelity",
]


def run_sweep(config):
    """Run one numbered sweep; returns {"config": ..., "records": [...]}."""
    return json.loads(_holo.run_sweep_json(json.dumps(config)))


def noiseless_metrics(kind="composite", T_gate=1.833, alpha_cd=1.0, omega_m=2.22, n_steps=2000):
    return json.loads(_holo.noiseless_metrics_json(kind, T_gate, alpha_cd, omega_m, n_steps))


def qec_point(kind, d_r, d_c=None, s=1.0, trials=1000, seed=1, workers=1, **channel):
    d_c = d_r if d_c is None else d_c
    return json.loads(_holo.qec_point_json(kind, d_r, d_c, s, trials, seed, workers=workers, **channel))
