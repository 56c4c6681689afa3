"""Unit-power fading models for the two constituent hops of each reflector.

Only two statistics of a hop matter to the large-surface analytics: the
power is normalized to E[|H|^2] = 1 and the mean magnitude E[|H|] < 1
enters the equivalent-channel parameters.  The built-in families are
Rayleigh and Rician (any K factor); anything satisfying the same
unit-power and mean-magnitude contract could be added behind
:class:`FadingModel`.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass

import numpy as np

from . import numerics

__all__ = ["FadingModel", "Rayleigh", "Rician", "from_config", "to_config"]

_SQRT_PI_HALF = math.sqrt(math.pi) / 2.0


class FadingModel(abc.ABC):
    """Immutable description of one hop's fading law."""

    @abc.abstractmethod
    def mean_magnitude(self) -> float:
        """E[|H|], strictly inside (0, 1) for unit-power fading."""

    @abc.abstractmethod
    def sample(self, rng: np.random.Generator, size=None):
        """Complex fading coefficients with E[|H|^2] = 1."""

    @abc.abstractmethod
    def sample_magnitude(self, rng: np.random.Generator, size=None):
        """|H| draws; same law as abs(sample(...)), cheaper where possible."""

    @abc.abstractmethod
    def to_config(self) -> dict:
        """JSON-serializable description."""


@dataclass(frozen=True)
class Rayleigh(FadingModel):
    """Circularly symmetric complex normal with unit power."""

    def mean_magnitude(self) -> float:
        return _SQRT_PI_HALF

    def sample(self, rng, size=None):
        return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)

    def sample_magnitude(self, rng, size=None):
        return rng.rayleigh(scale=math.sqrt(0.5), size=size)

    def to_config(self) -> dict:
        return {"type": "rayleigh"}


@dataclass(frozen=True)
class Rician(FadingModel):
    """Line-of-sight plus diffuse fading with Rice factor ``k_factor``.

    The deterministic component carries power K/(K+1) and the diffuse
    part 1/(K+1), keeping the total at unity.  The line-of-sight phase is
    fixed at zero: only the magnitude reaches the equivalent channel, the
    composite phase being absorbed by the reflector configuration.
    """

    k_factor: float

    def __post_init__(self):
        if not self.k_factor >= 0.0:
            raise numerics.DomainError(f"k_factor must be >= 0, got {self.k_factor!r}")

    def mean_magnitude(self) -> float:
        # sqrt(pi / (4(K+1))) * L_{1/2}(-K); the Laguerre form is the
        # stable evaluation of the confluent-hypergeometric mean of a
        # Rice magnitude (see numerics.laguerre_half)
        k = self.k_factor
        return math.sqrt(math.pi / (4.0 * (k + 1.0))) * numerics.laguerre_half(k)

    def _parts(self) -> tuple[float, float]:
        k = self.k_factor
        los = math.sqrt(k / (k + 1.0))
        diffuse = math.sqrt(1.0 / (k + 1.0))
        return los, diffuse

    def sample(self, rng, size=None):
        los, diffuse = self._parts()
        scatter = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
        return los + diffuse * scatter

    def sample_magnitude(self, rng, size=None):
        los, diffuse = self._parts()
        s = diffuse / math.sqrt(2.0)
        return np.hypot(los + s * rng.standard_normal(size), s * rng.standard_normal(size))

    def to_config(self) -> dict:
        return {"type": "rician", "k_factor": self.k_factor}


def to_config(model: FadingModel) -> dict:
    return model.to_config()


def from_config(cfg: dict) -> FadingModel:
    """Build a model from its JSON form, e.g. {"type": "rician", "k_factor": 1.0}."""
    try:
        kind = cfg["type"]
    except (TypeError, KeyError) as exc:
        raise numerics.DomainError(f"fading config needs a 'type': {cfg!r}") from exc
    if kind == "rayleigh":
        return Rayleigh()
    if kind == "rician":
        return Rician(k_factor=float(cfg["k_factor"]))
    raise numerics.DomainError(f"unknown fading type {kind!r}")
