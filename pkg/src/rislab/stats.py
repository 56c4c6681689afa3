"""Goodness-of-fit and curve-comparison utilities.

These turn qualitative agreement claims into numbers: a one-sample
Kolmogorov-Smirnov test against an analytic CDF, the horizontal dB gap
between two BER curves at a target error level, and a log-log slope fit
that extracts the empirical diversity order of a curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import numerics

__all__ = ["FitReport", "db_gap", "ks_test", "slope_fit"]


@dataclass(frozen=True)
class FitReport:
    statistic: float
    sample_count: int
    p_value: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "ks_distance": self.statistic,
            "sample_count": self.sample_count,
            "p_value": self.p_value,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def _kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov survival function 2 sum (-1)^(k-1) exp(-2 k^2 lam^2)."""
    if lam < 1e-8:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, 101):
        term = math.exp(-2.0 * k * k * lam * lam)
        total += sign * term
        if term < 1e-16:
            break
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))


def ks_test(samples, cdf: Callable, threshold: float | None = None) -> FitReport:
    """One-sample KS test of ``samples`` against the distribution ``cdf``.

    ``cdf`` must map an array of points to probabilities.  The p-value
    uses the asymptotic Kolmogorov law with the small-sample size
    correction; at least 100 samples are required.  When ``threshold``
    is omitted the 99% critical distance 1.6276/sqrt(N) is used.
    """
    xs = np.asarray(samples, dtype=float).ravel()
    if xs.size < 100:
        raise numerics.DomainError(f"ks_test needs >= 100 samples, got {xs.size}")
    if np.any(np.isnan(xs)):
        raise numerics.DomainError("ks_test rejects NaN samples")
    xs = np.sort(xs)
    n = xs.size
    f = np.asarray(cdf(xs), dtype=float)
    if f.shape != xs.shape or np.any(f < -1e-12) or np.any(f > 1.0 + 1e-12):
        raise numerics.DomainError("cdf must map the samples into [0, 1]")
    f = np.clip(f, 0.0, 1.0)
    grid = np.arange(1, n + 1) / n
    d_plus = float(np.max(grid - f))
    d_minus = float(np.max(f - (grid - 1.0 / n)))
    d = max(d_plus, d_minus)

    sqrt_n = math.sqrt(n)
    p = _kolmogorov_sf((sqrt_n + 0.12 + 0.11 / sqrt_n) * d)
    if threshold is None:
        threshold = 1.6276 / sqrt_n
    return FitReport(
        statistic=d, sample_count=n, p_value=p, threshold=threshold, passed=d < threshold
    )


def _crossing_db(x_db: np.ndarray, ber: np.ndarray, level: float) -> float:
    """Abscissa (dB) where a decreasing BER curve crosses ``level``,
    interpolating linearly in (dB, log10 BER) space."""
    if x_db.size != ber.size or x_db.size < 2:
        raise numerics.DomainError("curve needs matching x/y arrays with >= 2 points")
    if np.any(ber <= 0.0):
        raise numerics.DomainError("BER values must be positive for log interpolation")
    if np.any(np.diff(ber) >= 0.0):
        raise numerics.DomainError("curve must be strictly decreasing in BER")
    log_level = math.log10(level)
    ly = np.log10(ber)
    for i in range(ly.size - 1):
        if ly[i] >= log_level >= ly[i + 1]:
            t = (log_level - ly[i]) / (ly[i + 1] - ly[i])
            return float(x_db[i] + t * (x_db[i + 1] - x_db[i]))
    raise numerics.RangeError(f"level {level!r} not bracketed by the curve")


def db_gap(curve_a, curve_b, level: float) -> float:
    """Horizontal distance in dB between two BER curves at ``level``.

    A curve is a pair (x_db, ber) of equally long arrays with strictly
    decreasing BER.  Positive means curve_a needs more SNR than curve_b.
    """
    xa, ya = (np.asarray(v, dtype=float) for v in curve_a)
    xb, yb = (np.asarray(v, dtype=float) for v in curve_b)
    return _crossing_db(xa, ya, level) - _crossing_db(xb, yb, level)


def slope_fit(gamma_bar, ber, window: tuple[float, float] | None = None) -> float:
    """Diversity order of a BER-vs-average-SNR table.

    Least-squares slope of ln(BER) against ln(gamma_bar), negated.  The
    optional ``window`` restricts the fit to gamma_bar in [lo, hi].
    """
    g = np.asarray(gamma_bar, dtype=float)
    p = np.asarray(ber, dtype=float)
    if window is not None:
        lo, hi = window
        mask = (g >= lo) & (g <= hi)
        g = g[mask]
        p = p[mask]
    if g.size < 3:
        raise numerics.DomainError("slope fit needs at least 3 points in the window")
    if np.any(p <= 0.0) or np.any(g <= 0.0):
        raise numerics.DomainError("slope fit needs positive BER and SNR values")
    lx = np.log(g)
    lx -= lx.mean()  # centering keeps the normal equations well conditioned
    ly = np.log(p)
    slope = float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))
    return -slope
