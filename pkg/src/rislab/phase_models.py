"""Circular models of the per-reflector phase error.

Each model describes the random deviation of a reflector phase from its
ideal setting as a zero-mean, symmetric distribution on [-pi, pi).  The
quantities the analytics consume are the trigonometric moments
E[exp(j p Theta)], which are real for every supported model because of
the symmetry; the Monte Carlo engine additionally needs exact sampling.

Supported variants:

* :class:`NoError`        the degenerate ideal setting, Theta = 0
* :class:`VonMises`       estimation error with concentration kappa
* :class:`Quantizer`      q-bit phase quantization, uniform on
                          [-pi/2^q, pi/2^q]
* :class:`UniformCircle`  no phase knowledge at all
* :class:`Product`        independent composition of the above (moments
                          multiply; samples add and wrap)
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass

import numpy as np

from . import numerics

__all__ = [
    "NoError",
    "PhaseErrorModel",
    "Product",
    "Quantizer",
    "UniformCircle",
    "VonMises",
    "from_config",
    "moment_by_integration",
    "to_config",
]

_TWO_PI = 2.0 * math.pi

# numerical-integration oracle is limited to moderately oscillatory orders
MAX_INTEGRATION_ORDER = 16


def _check_order(p: int) -> int:
    if p != int(p) or p < 0:
        raise numerics.DomainError(f"moment order must be a non-negative integer, got {p!r}")
    return int(p)


class PhaseErrorModel(abc.ABC):
    """Common surface of all phase-error models.

    Models are immutable; sampling draws from a caller-owned
    ``numpy.random.Generator`` so there is no hidden global state.
    """

    @abc.abstractmethod
    def trig_moment(self, p: int) -> float:
        """Closed-form trigonometric moment E[exp(j p Theta)], real valued."""

    @abc.abstractmethod
    def sample(self, rng: np.random.Generator, size=None):
        """Draw angles in [-pi, pi); scalar when ``size`` is None."""

    def pdf(self, theta):
        """Density on [-pi, pi); raises for models without one."""
        raise numerics.DomainError(f"{type(self).__name__} has no density")

    @property
    def has_density(self) -> bool:
        return True

    @abc.abstractmethod
    def to_config(self) -> dict:
        """JSON-serializable description of the model."""


@dataclass(frozen=True)
class NoError(PhaseErrorModel):
    """Perfectly estimated and configured phases: Theta = 0."""

    def trig_moment(self, p: int) -> float:
        _check_order(p)
        return 1.0

    def sample(self, rng, size=None):
        return 0.0 if size is None else np.zeros(size)

    @property
    def has_density(self) -> bool:
        return False

    def to_config(self) -> dict:
        return {"type": "none"}


@dataclass(frozen=True)
class VonMises(PhaseErrorModel):
    """Zero-mean von Mises error with concentration ``kappa`` >= 0.

    kappa = 0 coincides with the uniform distribution on the circle, the
    consistent limit of the Bessel-ratio moments.
    """

    kappa: float

    def __post_init__(self):
        if not self.kappa >= 0.0:
            raise numerics.DomainError(f"kappa must be >= 0, got {self.kappa!r}")

    def trig_moment(self, p: int) -> float:
        p = _check_order(p)
        if p == 0:
            return 1.0
        if self.kappa == 0.0:
            return 0.0
        # scaled ratio survives arbitrarily large concentrations
        return numerics.bessel_i_scaled(p, self.kappa) / numerics.bessel_i_scaled(0, self.kappa)

    def pdf(self, theta):
        theta = np.asarray(theta, dtype=float)
        i0e = numerics.bessel_i_scaled(0, self.kappa)
        return np.exp(self.kappa * (np.cos(theta) - 1.0)) / (_TWO_PI * i0e)

    def sample(self, rng, size=None):
        scalar = size is None
        n = 1 if scalar else int(np.prod(size))
        out = _sample_von_mises(self.kappa, rng, n)
        if scalar:
            return float(out[0])
        return out.reshape(size)

    def to_config(self) -> dict:
        return {"type": "von_mises", "kappa": self.kappa}


@dataclass(frozen=True)
class Quantizer(PhaseErrorModel):
    """Quantization error of a phase set with 2**bits levels.

    The error is uniform on [-w, w] with half-width w = pi / 2**bits, so
    the p-th moment is sin(p w) / (p w).
    """

    bits: int

    def __post_init__(self):
        if self.bits != int(self.bits) or self.bits < 1:
            raise numerics.DomainError(f"bits must be a positive integer, got {self.bits!r}")

    @property
    def half_width(self) -> float:
        return math.pi / (2 ** self.bits)

    def trig_moment(self, p: int) -> float:
        p = _check_order(p)
        if p == 0:
            return 1.0
        if p % (2 ** self.bits) == 0:
            return 0.0  # sin(k*pi) is exactly zero
        x = p * self.half_width
        return math.sin(x) / x

    def pdf(self, theta):
        theta = np.asarray(theta, dtype=float)
        w = self.half_width
        return np.where(np.abs(theta) <= w, 1.0 / (2.0 * w), 0.0)

    def sample(self, rng, size=None):
        w = self.half_width
        out = rng.uniform(-w, w, size)
        return float(out) if size is None else out

    def to_config(self) -> dict:
        return {"type": "quantizer", "bits": int(self.bits)}


@dataclass(frozen=True)
class UniformCircle(PhaseErrorModel):
    """Complete phase uncertainty: uniform on [-pi, pi)."""

    def trig_moment(self, p: int) -> float:
        p = _check_order(p)
        return 1.0 if p == 0 else 0.0

    def pdf(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.full_like(theta, 1.0 / _TWO_PI)

    def sample(self, rng, size=None):
        out = rng.uniform(-math.pi, math.pi, size)
        return float(out) if size is None else out

    def to_config(self) -> dict:
        return {"type": "uniform"}


@dataclass(frozen=True)
class Product(PhaseErrorModel):
    """Sum of independent errors, e.g. estimation plus quantization.

    The trigonometric moments of a sum of independent angles are the
    products of the component moments; sampling adds the component draws
    and wraps back to [-pi, pi).
    """

    components: tuple[PhaseErrorModel, ...]

    def __post_init__(self):
        if not self.components:
            raise numerics.DomainError("Product requires at least one component")
        object.__setattr__(self, "components", tuple(self.components))

    def trig_moment(self, p: int) -> float:
        p = _check_order(p)
        out = 1.0
        for comp in self.components:
            out *= comp.trig_moment(p)
        return out

    def sample(self, rng, size=None):
        total = self.components[0].sample(rng, size)
        for comp in self.components[1:]:
            total = total + comp.sample(rng, size)
        wrapped = (total + math.pi) % _TWO_PI - math.pi
        return float(wrapped) if size is None else wrapped

    @property
    def has_density(self) -> bool:
        return any(c.has_density for c in self.components)

    def to_config(self) -> dict:
        return {"type": "product", "components": [c.to_config() for c in self.components]}


# ---------------------------------------------------------------------------
# von Mises sampling, Best-Fisher rejection
# ---------------------------------------------------------------------------


def _sample_von_mises(kappa: float, rng: np.random.Generator, n: int) -> np.ndarray:
    if kappa == 0.0:
        return rng.uniform(-math.pi, math.pi, n)
    if kappa < 1e-5:
        r = 1.0 / kappa + kappa  # Taylor form, avoids cancellation
    else:
        tau = 1.0 + math.sqrt(1.0 + 4.0 * kappa * kappa)
        rho = (tau - math.sqrt(2.0 * tau)) / (2.0 * kappa)
        r = (1.0 + rho * rho) / (2.0 * rho)

    out = np.empty(n)
    filled = 0
    while filled < n:
        todo = n - filled
        u1 = rng.random(todo)
        u2 = rng.random(todo)
        u3 = rng.random(todo)
        z = np.cos(np.pi * u1)
        f = (1.0 + r * z) / (r + z)
        c = kappa * (r - f)
        with np.errstate(divide="ignore", invalid="ignore"):
            accept = (c * (2.0 - c) - u2 > 0.0) | (np.log(c / u2) + 1.0 - c >= 0.0)
        theta = np.sign(u3 - 0.5) * np.arccos(np.clip(f, -1.0, 1.0))
        good = theta[accept]
        take = min(todo, good.size)
        out[filled : filled + take] = good[:take]
        filled += take
    return out


# ---------------------------------------------------------------------------
# integration oracle for the closed-form moments
# ---------------------------------------------------------------------------


def moment_by_integration(
    model: PhaseErrorModel, p: int, spec: numerics.QuadratureSpec | None = None
) -> float:
    """p-th trigonometric moment by direct quadrature of cos(p theta) pdf.

    Independent of the closed forms in :meth:`PhaseErrorModel.trig_moment`;
    products recurse over their components (expectations of independent
    factors multiply), with a degenerate component contributing exactly 1.
    """
    p = _check_order(p)
    if p > MAX_INTEGRATION_ORDER:
        raise numerics.RangeError(
            f"integration oracle capped at order {MAX_INTEGRATION_ORDER}, got {p}"
        )
    if isinstance(model, Product):
        out = 1.0
        for comp in model.components:
            out *= 1.0 if isinstance(comp, NoError) else moment_by_integration(comp, p, spec)
        return out
    if not model.has_density:
        raise numerics.DomainError(f"{type(model).__name__} has no density to integrate")
    spec = spec or numerics.QuadratureSpec(tolerance=1e-12, max_subdivisions=4000)
    # symmetric densities: the sine part vanishes and the cosine part doubles
    value = numerics.integrate(
        lambda th: np.cos(p * th) * model.pdf(th), 0.0, math.pi, spec
    )
    return 2.0 * value


# ---------------------------------------------------------------------------
# config (de)serialization
# ---------------------------------------------------------------------------


def to_config(model: PhaseErrorModel) -> dict:
    return model.to_config()


def from_config(cfg: dict) -> PhaseErrorModel:
    """Build a model from its JSON form, e.g. {"type": "von_mises", "kappa": 8}."""
    try:
        kind = cfg["type"]
    except (TypeError, KeyError) as exc:
        raise numerics.DomainError(f"phase-error config needs a 'type': {cfg!r}") from exc
    if kind == "none":
        return NoError()
    if kind == "von_mises":
        return VonMises(kappa=float(cfg["kappa"]))
    if kind == "quantizer":
        return Quantizer(bits=int(cfg["bits"]))
    if kind == "uniform":
        return UniformCircle()
    if kind == "product":
        return Product(components=tuple(from_config(c) for c in cfg["components"]))
    raise numerics.DomainError(f"unknown phase-error type {kind!r}")
