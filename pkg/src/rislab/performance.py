"""Error-probability analytics for BPSK over the equivalent channel.

The exact average error probability under the gamma SNR law uses the
single-integral moment-generating-function form

    P_e = (1/pi) int_0^{pi/2} (1 + gamma_bar / (m sin^2 theta))^(-m) dtheta

which is valid for any real m > 0.  At high average SNR it collapses to
the power law

    P_e ~ m^(m-1) Gamma(m + 1/2) / (2 sqrt(pi) Gamma(m)) * gamma_bar^(-m)

from which the diversity gain G_d = m and the coding gain G_c (relative
to the single-reflector SNR) follow.  The planners invert those
relations for the smallest reflector count meeting a gain target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .equiv_channel import EquivChannel, LrsScenario, derive, m_from_moments

__all__ = [
    "CodingGainPlan",
    "GainDecomposition",
    "ber_bpsk",
    "ber_high_snr",
    "gains",
    "reflectors_for_coding_gain",
    "reflectors_for_diversity",
]

_PLANNER_N_MAX = 10**7

_BER_QUAD = numerics.QuadratureSpec(
    tolerance=1e-12, rel_tolerance=1e-11, max_subdivisions=4000, order=24
)


@dataclass(frozen=True)
class GainDecomposition:
    """High-SNR asymptote split as P_e = (G_c * gamma0) ** (-G_d)."""

    diversity_gain: float
    coding_gain: float


@dataclass(frozen=True)
class CodingGainPlan:
    """Result of the coding-gain planner.

    When the target is unreachable within the search bound, ``feasible``
    is False, ``n`` is None and ``achieved`` holds the best coding gain
    found at ``searched_up_to`` reflectors.
    """

    feasible: bool
    n: int | None
    achieved: float
    searched_up_to: int


def ber_bpsk(ch: EquivChannel) -> float:
    """Exact average BPSK error probability for the channel."""
    m = ch.m
    gbar = ch.gamma_bar
    if not m > 0.0:
        raise numerics.DomainError(f"m must be > 0, got {m!r}")
    if gbar < 0.0:
        raise numerics.DomainError(f"gamma_bar must be >= 0, got {gbar!r}")
    if gbar == 0.0:
        return 0.5

    def integrand(theta):
        s = np.sin(theta)
        with np.errstate(divide="ignore", under="ignore"):
            return np.exp(-m * np.log1p(gbar / (m * s * s)))

    return numerics.integrate(integrand, 0.0, 0.5 * math.pi, _BER_QUAD) / math.pi


def _log_asymptote_bracket(m: float) -> float:
    """log of m^(m-1) Gamma(m+1/2) / (2 sqrt(pi) Gamma(m))."""
    return (
        (m - 1.0) * math.log(m)
        + numerics.ln_gamma(m + 0.5)
        - numerics.ln_gamma(m)
        - math.log(2.0)
        - 0.5 * math.log(math.pi)
    )


def ber_high_snr(ch: EquivChannel) -> float:
    """High-SNR power-law asymptote of :func:`ber_bpsk`."""
    if not ch.gamma_bar > 0.0:
        raise numerics.DomainError("asymptote requires gamma_bar > 0")
    with np.errstate(under="ignore"):
        return math.exp(_log_asymptote_bracket(ch.m) - ch.m * math.log(ch.gamma_bar))


def gains(scenario: LrsScenario) -> GainDecomposition:
    """Diversity and coding gains relative to the single-reflector SNR."""
    ch = derive(scenario)
    if ch.rayleigh_equivalent:
        raise numerics.DomainError(
            "gains are undefined when the first trigonometric moment is zero"
        )
    m = ch.m
    phi1 = scenario.phi(1)
    a4 = scenario.a_squared**2
    coding = scenario.n**2 * phi1 * phi1 * a4 * math.exp(-_log_asymptote_bracket(m) / m)
    return GainDecomposition(diversity_gain=m, coding_gain=coding)


# ---------------------------------------------------------------------------
# reflector-count planners
# ---------------------------------------------------------------------------


def reflectors_for_diversity(target_gd: float, a: float, phi1: float, phi2: float) -> int:
    """Smallest n whose shape parameter reaches ``target_gd``.

    The shape parameter is linear in n, so the answer is a ceiling; the
    final adjustment below removes one-ulp artifacts so that a target
    taken from an integer-n evaluation round-trips exactly.
    """
    if not target_gd > 0.0:
        raise numerics.DomainError(f"target diversity gain must be > 0, got {target_gd!r}")
    if not phi1 > 0.0:
        raise numerics.DomainError("planner requires phi_1 > 0")
    a2 = a * a
    x = phi1 * phi1 * a2 * a2
    denom = 1.0 + phi2 - 2.0 * x
    if not denom > 0.0:
        raise numerics.DomainError("moment combination leaves no spread in Re(H)")

    n = max(1, math.ceil(2.0 * target_gd * denom / x))
    slack = 1.0 - 1e-12
    while n > 1 and m_from_moments(n - 1, a2, phi1, phi2) >= target_gd * slack:
        n -= 1
    while m_from_moments(n, a2, phi1, phi2) < target_gd * slack:
        n += 1
    return n


def _coding_gain(n: int, a: float, phi1: float, phi2: float) -> float:
    a2 = a * a
    m = m_from_moments(n, a2, phi1, phi2)
    return n * n * phi1 * phi1 * a2 * a2 * math.exp(-_log_asymptote_bracket(m) / m)


def reflectors_for_coding_gain(
    target_gc: float,
    gamma0: float,
    a: float,
    phi1: float,
    phi2: float,
    n_max: int = _PLANNER_N_MAX,
) -> CodingGainPlan:
    """Smallest n whose coding gain reaches ``target_gc``.

    The coding gain is searched by doubling plus bisection and the
    bracket is verified afterwards; should the verification detect a
    non-monotone stretch, the bracket is scanned exhaustively.
    ``gamma0`` does not influence the gain itself (the gain is defined
    relative to it) and is only validated.
    """
    if not target_gc > 0.0:
        raise numerics.DomainError(f"target coding gain must be > 0, got {target_gc!r}")
    if not gamma0 > 0.0:
        raise numerics.DomainError(f"gamma0 must be > 0, got {gamma0!r}")
    if not phi1 > 0.0:
        raise numerics.DomainError("planner requires phi_1 > 0")

    gc = lambda n: _coding_gain(n, a, phi1, phi2)

    if gc(1) >= target_gc:
        return CodingGainPlan(feasible=True, n=1, achieved=gc(1), searched_up_to=1)

    lo, hi = 1, 2
    while gc(hi) < target_gc:
        lo = hi
        hi *= 2
        if hi >= n_max:
            hi = n_max
            if gc(hi) < target_gc:
                return CodingGainPlan(
                    feasible=False, n=None, achieved=gc(n_max), searched_up_to=n_max
                )
            break

    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gc(mid) >= target_gc:
            hi = mid
        else:
            lo = mid

    # bisection assumed monotone growth; verify and fall back to a scan
    if not (gc(hi) >= target_gc and (hi == 1 or gc(hi - 1) < target_gc)):
        for n in range(1, n_max + 1):
            if gc(n) >= target_gc:
                return CodingGainPlan(feasible=True, n=n, achieved=gc(n), searched_up_to=n)
        return CodingGainPlan(feasible=False, n=None, achieved=gc(n_max), searched_up_to=n_max)
    return CodingGainPlan(feasible=True, n=hi, achieved=gc(hi), searched_up_to=hi)
