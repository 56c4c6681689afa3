"""Scenario configuration: one JSON document per link.

Schema::

    {
      "n": 32,
      "gamma0_db": -16.0,
      "fading_sr": {"type": "rician", "k_factor": 1.0},
      "fading_rd": {"type": "rayleigh"},
      "phase_error": {"type": "von_mises", "kappa": 8.0},
      "sweep": {"start_db": -24.0, "stop_db": -10.0, "step_db": 1.0}
    }

``sweep`` is only needed by curve commands; planners read ``target_gd``
or ``target_gc`` instead of (or next to) ``n``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import fading, phase_models
from .equiv_channel import LrsScenario

__all__ = [
    "ConfigError",
    "db_to_linear",
    "linear_to_db",
    "load_config",
    "scenario_from_config",
    "scenario_to_config",
    "sweep_from_config",
]


class ConfigError(ValueError):
    """A configuration document is missing keys or holds bad values."""


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config document must be a JSON object")
    return cfg


def _gamma0_from(cfg: dict) -> float:
    if "gamma0_db" in cfg:
        return db_to_linear(float(cfg["gamma0_db"]))
    if "gamma0" in cfg:
        return float(cfg["gamma0"])
    raise ConfigError("config needs 'gamma0_db' (or linear 'gamma0')")


def scenario_from_config(cfg: dict) -> LrsScenario:
    try:
        return LrsScenario(
            n=int(cfg["n"]),
            gamma0=_gamma0_from(cfg),
            fading_sr=fading.from_config(cfg["fading_sr"]),
            fading_rd=fading.from_config(cfg["fading_rd"]),
            phase_error=phase_models.from_config(cfg["phase_error"]),
        )
    except KeyError as exc:
        raise ConfigError(f"config is missing {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def scenario_to_config(scenario: LrsScenario) -> dict:
    return {
        "n": scenario.n,
        "gamma0_db": linear_to_db(scenario.gamma0),
        "fading_sr": fading.to_config(scenario.fading_sr),
        "fading_rd": fading.to_config(scenario.fading_rd),
        "phase_error": phase_models.to_config(scenario.phase_error),
    }


def sweep_from_config(cfg: dict) -> np.ndarray:
    """Single-reflector SNR sweep in dB, inclusive of the stop value."""
    try:
        sweep = cfg["sweep"]
        start = float(sweep["start_db"])
        stop = float(sweep["stop_db"])
        step = float(sweep["step_db"])
    except KeyError as exc:
        raise ConfigError(f"sweep config is missing {exc.args[0]!r}") from exc
    if step <= 0.0 or stop < start:
        raise ConfigError("sweep needs step_db > 0 and stop_db >= start_db")
    count = int(round((stop - start) / step))
    grid = start + step * np.arange(count + 1)
    return grid[grid <= stop + 1e-9]
