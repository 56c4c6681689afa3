"""Equivalent scalar-channel analytics for a large reflecting surface.

For a surface of n reflectors, the normalized composite coefficient

    H = (1/n) sum_i |H_i1| |H_i2| exp(j Theta_i)

converges (central limit theorem) to a complex normal whose real and
imaginary parts are independent Gaussians:

    E[Re H]   = mu       = phi_1 a^2
    Var[Re H] = sigma_U2 = (1 + phi_2 - 2 phi_1^2 a^4) / (2n)
    Var[Im H] = sigma_V2 = (1 - phi_2) / (2n)

with a^2 = a_1 a_2 the product of the two hop mean magnitudes and phi_p
the trigonometric moments of the phase error.  When phi_1 > 0, |H| is
Nakagami with shape m = mu^2 / (4 sigma_U2) and spread mu^2, so the
instantaneous SNR n^2 gamma0 |H|^2 is gamma distributed with shape m and
mean gamma_bar = n^2 gamma0 phi_1^2 a^4.  The cumulant generating
function of |H|^2 and its single-gamma approximation are exposed so the
quality of that reduction can be measured directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .fading import FadingModel
from .phase_models import PhaseErrorModel

__all__ = [
    "EquivChannel",
    "LrsScenario",
    "cgf_exact",
    "cgf_gamma_approx",
    "derive",
    "finite_n_second_moment",
    "m_from_moments",
    "nakagami_pdf",
    "snr_cdf",
    "snr_pdf",
]


@dataclass(frozen=True)
class LrsScenario:
    """Full description of one link through the surface.

    ``gamma0`` is the average SNR that a single reflector alone would
    deliver, in linear scale; dB conversions belong to the CLI boundary.
    """

    n: int
    gamma0: float
    fading_sr: FadingModel
    fading_rd: FadingModel
    phase_error: PhaseErrorModel

    def __post_init__(self):
        if self.n != int(self.n) or self.n < 1:
            raise numerics.DomainError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not self.gamma0 > 0.0:
            raise numerics.DomainError(f"gamma0 must be > 0, got {self.gamma0!r}")

    @property
    def a_squared(self) -> float:
        """a^2 = a_1 a_2, the product of the hop mean magnitudes."""
        return self.fading_sr.mean_magnitude() * self.fading_rd.mean_magnitude()

    def phi(self, p: int) -> float:
        return self.phase_error.trig_moment(p)


@dataclass(frozen=True)
class EquivChannel:
    """Derived parameters of the equivalent point-to-point channel.

    ``rayleigh_equivalent`` marks the phi_1 = 0 regime (no usable phase
    alignment), where H is a mean-zero circular Gaussian: the magnitude
    is then Rayleigh, reported as the m = 1 case with omega = E[|H|^2]
    = 1/n and gamma_bar = n gamma0 instead of the mu^2-based spread.
    """

    mu: float
    sigma_u2: float
    sigma_v2: float
    m: float
    omega: float
    gamma_bar: float
    n: int
    gamma0: float
    rayleigh_equivalent: bool = False

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "sigma_u2": self.sigma_u2,
            "sigma_v2": self.sigma_v2,
            "m": self.m,
            "omega": self.omega,
            "gamma_bar": self.gamma_bar,
            "gamma_bar_db": 10.0 * math.log10(self.gamma_bar),
            "n": self.n,
            "gamma0": self.gamma0,
            "rayleigh_equivalent": self.rayleigh_equivalent,
        }


def m_from_moments(n: int, a_squared: float, phi1: float, phi2: float) -> float:
    """Closed form of the shape parameter in terms of the circular moments:

        m = (n/2) phi_1^2 a^4 / (1 + phi_2 - 2 phi_1^2 a^4)

    Algebraically identical to mu^2 / (4 sigma_U2); kept as the second,
    independent route for consistency checks and for the planners.
    """
    x = phi1 * phi1 * a_squared * a_squared
    denom = 1.0 + phi2 - 2.0 * x
    if not denom > 0.0:
        raise numerics.DomainError("moment combination leaves no spread in Re(H)")
    return 0.5 * n * x / denom


def derive(scenario: LrsScenario) -> EquivChannel:
    """Map a scenario to its equivalent-channel parameters."""
    phi1 = scenario.phi(1)
    phi2 = scenario.phi(2)
    if phi1 < 0.0:
        raise numerics.DomainError(
            "first trigonometric moment must be >= 0 for a symmetric zero-mean error"
        )
    a2 = scenario.a_squared
    a4 = a2 * a2
    n = scenario.n
    sigma_u2 = (1.0 + phi2 - 2.0 * phi1 * phi1 * a4) / (2.0 * n)
    sigma_v2 = (1.0 - phi2) / (2.0 * n)

    if phi1 == 0.0:
        # no alignment at all: mean-zero circular Gaussian, Rayleigh magnitude
        return EquivChannel(
            mu=0.0,
            sigma_u2=sigma_u2,
            sigma_v2=sigma_v2,
            m=1.0,
            omega=1.0 / n,
            gamma_bar=n * scenario.gamma0,
            n=n,
            gamma0=scenario.gamma0,
            rayleigh_equivalent=True,
        )

    mu = phi1 * a2
    if not sigma_u2 > 0.0:
        raise numerics.DomainError("sigma_U^2 must be positive")
    m = mu * mu / (4.0 * sigma_u2)
    return EquivChannel(
        mu=mu,
        sigma_u2=sigma_u2,
        sigma_v2=sigma_v2,
        m=m,
        omega=mu * mu,
        gamma_bar=n * n * scenario.gamma0 * phi1 * phi1 * a4,
        n=n,
        gamma0=scenario.gamma0,
    )


def finite_n_second_moment(scenario: LrsScenario) -> float:
    """Exact E[|H|^2] at finite n: 1/n + (1 - 1/n) phi_1^2 a^4.

    Follows from the pairwise independence of the reflector terms and the
    unit hop powers; the large-n model keeps only phi_1^2 a^4, so the gap
    to this exact value is (1 - phi_1^2 a^4)/n.
    """
    phi1 = scenario.phi(1)
    x = phi1 * phi1 * scenario.a_squared**2
    return 1.0 / scenario.n + (1.0 - 1.0 / scenario.n) * x


# ---------------------------------------------------------------------------
# densities of the magnitude and of the instantaneous SNR
# ---------------------------------------------------------------------------


def nakagami_pdf(ch: EquivChannel, x):
    """Density of |H|: 2 m^m x^(2m-1) exp(-m x^2 / omega) / (Gamma(m) omega^m).

    Evaluated in the log domain; m grows linearly with n so m^m and
    omega^m overflow long before the density does.
    """
    m = ch.m
    omega = ch.omega
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise numerics.DomainError("magnitude must be >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        xs = arr[pos]
        log_pdf = (
            math.log(2.0)
            + m * math.log(m)
            + (2.0 * m - 1.0) * np.log(xs)
            - m * xs * xs / omega
            - numerics.ln_gamma(m)
            - m * math.log(omega)
        )
        with np.errstate(under="ignore"):
            out[pos] = np.exp(log_pdf)
    return float(out[0]) if scalar else out


def snr_pdf(ch: EquivChannel, gamma):
    """Gamma density of the instantaneous SNR, shape m and mean gamma_bar."""
    m = ch.m
    gbar = ch.gamma_bar
    arr = np.asarray(gamma, dtype=float)
    if np.any(arr < 0.0):
        raise numerics.DomainError("snr must be >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        g = arr[pos]
        log_pdf = (
            m * math.log(m)
            + (m - 1.0) * np.log(g)
            - m * g / gbar
            - numerics.ln_gamma(m)
            - m * math.log(gbar)
        )
        with np.errstate(under="ignore"):
            out[pos] = np.exp(log_pdf)
    if m == 1.0:
        out[~pos] = 1.0 / gbar  # exponential density is finite at the origin
    return float(out[0]) if scalar else out


def snr_cdf(ch: EquivChannel, gamma):
    """Distribution function of the instantaneous SNR."""
    arr = np.asarray(gamma, dtype=float)
    if np.any(arr < 0.0):
        raise numerics.DomainError("snr must be >= 0")
    return numerics.regularized_gamma_p(ch.m, arr * (ch.m / ch.gamma_bar))


# ---------------------------------------------------------------------------
# cumulant generating function of |H|^2 and its gamma reduction
# ---------------------------------------------------------------------------


def _require_aligned(ch: EquivChannel, op: str) -> None:
    if ch.rayleigh_equivalent:
        raise numerics.DomainError(f"{op} needs a channel with phi_1 > 0")


def cgf_exact(ch: EquivChannel, t: float) -> float:
    """Exact CGF of |H|^2 under the Gaussian model of (Re H, Im H):

        mu^2 t / (1 - 2 sigma_U2 t)
        - (1/2) ln(1 - 2 sigma_U2 t) - (1/2) ln(1 - 2 sigma_V2 t)

    Domain: t < 1/(4 sigma_U2) and t < 1/(2 sigma_V2), matching the
    stricter requirement of the gamma reduction so both are comparable.
    """
    _require_aligned(ch, "cgf_exact")
    t = float(t)
    if 4.0 * ch.sigma_u2 * t >= 1.0 or 2.0 * ch.sigma_v2 * t >= 1.0:
        raise numerics.DomainError(f"t = {t!r} outside the CGF domain")
    return (
        ch.mu * ch.mu * t / (1.0 - 2.0 * ch.sigma_u2 * t)
        - 0.5 * math.log1p(-2.0 * ch.sigma_u2 * t)
        - 0.5 * math.log1p(-2.0 * ch.sigma_v2 * t)
    )


def cgf_gamma_approx(ch: EquivChannel, t: float) -> float:
    """Single-gamma approximation of the CGF:

        -(mu^2 / (4 sigma_U2)) ln(1 - 4 sigma_U2 t)

    i.e. a gamma law with shape m and scale 4 sigma_U2.  The dropped
    terms shrink like 1/n at fixed t, which the tests verify by doubling
    n at matched t.
    """
    _require_aligned(ch, "cgf_gamma_approx")
    t = float(t)
    if 4.0 * ch.sigma_u2 * t >= 1.0:
        raise numerics.DomainError(f"t = {t!r} outside the CGF domain")
    return -ch.m * math.log1p(-4.0 * ch.sigma_u2 * t)
