"""Special-function kernels against independent oracles.

Oracles here are deliberately naive: direct factorial series, Taylor
expansions and algebraic closed forms, coded without reference to the
implementations under test.
"""

import math

import numpy as np
import pytest

from rislab import numerics as nx


# ---------------------------------------------------------------------------
# in-test oracles
# ---------------------------------------------------------------------------


def bessel_series_oracle(p, x, terms=400):
    """sum_k (x/2)^(2k+p) / (k! (k+p)!), each term through libm lgamma."""
    total = 0.0
    lh = math.log(x / 2.0)
    for k in range(terms):
        total += math.exp((2 * k + p) * lh - math.lgamma(k + 1) - math.lgamma(k + p + 1))
    return total


def erf_taylor_oracle(x, terms=80):
    """erf(x) = 2/sqrt(pi) sum_k (-1)^k x^(2k+1) / (k! (2k+1)).

    Accurate only while cancellation is mild (x up to about 1.5)."""
    total = 0.0
    for k in range(terms):
        total += (-1.0) ** k * x ** (2 * k + 1) / (math.factorial(k) * (2 * k + 1))
    return 2.0 / math.sqrt(math.pi) * total


def erfc_cf_oracle(z, depth=120):
    """Continued fraction erfc(z) = exp(-z^2)/sqrt(pi) / (z + (1/2)/(z + 1/(z + ...)))
    evaluated bottom-up; reliable for z >= 1."""
    tail = 0.0
    for k in range(depth, 0, -1):
        tail = (k / 2.0) / (z + tail)
    return math.exp(-z * z) / math.sqrt(math.pi) / (z + tail)


def q_oracle(x):
    """Gaussian tail by whichever oracle is accurate at this argument."""
    z = x / math.sqrt(2.0)
    if z < 1.5:
        return 0.5 * (1.0 - erf_taylor_oracle(z))
    return 0.5 * erfc_cf_oracle(z)


def hyp1f1_oracle(a, b, z, terms=300):
    total = 1.0
    term = 1.0
    for k in range(terms):
        term *= (a + k) * z / ((b + k) * (k + 1))
        total += term
    return total


# ---------------------------------------------------------------------------
# bessel_i
# ---------------------------------------------------------------------------


def test_bessel_at_zero():
    assert nx.bessel_i(0, 0.0) == 1.0
    assert nx.bessel_i(1, 0.0) == 0.0
    assert nx.bessel_i(5, 0.0) == 0.0


def test_bessel_small_argument_vs_series_oracle():
    assert nx.bessel_i(0, 1.0) == pytest.approx(1.2660658777520084, rel=1e-12)
    for p in (0, 1, 2, 5):
        for x in (0.1, 1.0, 4.0, 10.0, 25.0):
            assert nx.bessel_i(p, x) == pytest.approx(bessel_series_oracle(p, x), rel=1e-12)


def test_bessel_large_argument_recurrence():
    # I_{p-1}(x) - I_{p+1}(x) = (2p/x) I_p(x)
    for x in (0.1, 1.0, 7.0, 50.0, 120.0, 400.0):
        for p in range(1, 11):
            lhs = nx.bessel_i(p - 1, x) - nx.bessel_i(p + 1, x)
            rhs = 2.0 * p / x * nx.bessel_i(p, x)
            assert lhs == pytest.approx(rhs, rel=1e-9)


def test_bessel_scaled_consistent_with_plain():
    for p in (0, 1, 3):
        for x in (0.5, 10.0, 60.0, 300.0):
            assert nx.bessel_i_scaled(p, x) == pytest.approx(
                nx.bessel_i(p, x) * math.exp(-x), rel=1e-12
            )


def test_bessel_scaled_survives_huge_arguments():
    # ratio of scaled values approaches 1 as the argument grows
    ratio = nx.bessel_i_scaled(1, 1e8) / nx.bessel_i_scaled(0, 1e8)
    assert 0.999999 < ratio < 1.0


def test_bessel_range_and_domain_errors():
    with pytest.raises(nx.RangeError):
        nx.bessel_i(0, 701.0)
    with pytest.raises(nx.DomainError):
        nx.bessel_i(-1, 1.0)
    with pytest.raises(nx.DomainError):
        nx.bessel_i(0, -0.5)
    assert nx.bessel_i(0, 700.0) > 0.0  # boundary stays finite


# ---------------------------------------------------------------------------
# ln_gamma
# ---------------------------------------------------------------------------


def test_ln_gamma_exact_points():
    assert nx.ln_gamma(1.0) == pytest.approx(0.0, abs=1e-13)
    assert nx.ln_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-13)
    assert nx.ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-13)
    assert nx.ln_gamma(2.0) == pytest.approx(0.0, abs=1e-13)


def test_ln_gamma_functional_equation():
    for x in np.linspace(0.5, 20.0, 79):
        lhs = math.exp(nx.ln_gamma(x + 1.0))
        rhs = x * math.exp(nx.ln_gamma(x))
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_ln_gamma_domain_error():
    with pytest.raises(nx.DomainError):
        nx.ln_gamma(0.0)
    with pytest.raises(nx.DomainError):
        nx.ln_gamma(-3.2)


# ---------------------------------------------------------------------------
# gauss_q and erfc
# ---------------------------------------------------------------------------


def test_gauss_q_reference_points():
    assert nx.gauss_q(0.0) == 0.5
    # frozen from the Taylor-series erf oracle: Q(1) = (1 - erf(1/sqrt 2))/2
    oracle = 0.5 * (1.0 - erf_taylor_oracle(1.0 / math.sqrt(2.0)))
    assert oracle == pytest.approx(0.1586552539314571, rel=1e-12)
    assert nx.gauss_q(1.0) == pytest.approx(0.1586552539314571, rel=1e-12)


def test_gauss_q_matches_erf_oracle_on_range():
    for x in np.linspace(0.05, 8.0, 60):
        assert nx.gauss_q(float(x)) == pytest.approx(q_oracle(float(x)), rel=1e-11)


def test_gauss_q_symmetry_exact():
    for x in (0.1, 0.7, 1.3, 2.9, 5.5, 7.7):
        assert abs(nx.gauss_q(x) + nx.gauss_q(-x) - 1.0) < 1e-12


def test_gauss_q_deep_tail():
    assert nx.gauss_q(40.0) <= 1e-300
    assert nx.gauss_q(45.0) == 0.0


def test_gauss_q_vectorized_matches_scalar():
    xs = np.array([-2.0, -0.3, 0.0, 0.4, 1.7, 6.0])
    vec = nx.gauss_q(xs)
    for x, v in zip(xs, vec):
        assert v == pytest.approx(nx.gauss_q(float(x)), rel=1e-14)


# ---------------------------------------------------------------------------
# regularized_gamma_p
# ---------------------------------------------------------------------------


def test_gamma_p_boundaries():
    assert nx.regularized_gamma_p(3.7, 0.0) == 0.0
    for x in (0.2, 1.0, 5.0):
        assert nx.regularized_gamma_p(1.0, x) == pytest.approx(1.0 - math.exp(-x), abs=1e-12)


def test_gamma_p_half_is_erf():
    # P(1/2, x) = erf(sqrt(x))
    for x in (0.05, 0.3, 1.0, 2.5, 6.0):
        assert nx.regularized_gamma_p(0.5, x) == pytest.approx(
            erf_taylor_oracle(math.sqrt(x)), abs=1e-10
        )


def test_gamma_p_monotone_and_bounded():
    for m in (0.3, 1.0, 4.5, 40.0, 250.0):
        xs = np.linspace(0.0, 4.0 * m + 20.0, 200)
        vals = [nx.regularized_gamma_p(m, float(x)) for x in xs]
        assert all(0.0 <= v <= 1.0 for v in vals)
        assert all(b >= a - 1e-14 for a, b in zip(vals, vals[1:]))
        assert vals[-1] > 0.99


def test_gamma_p_array_input():
    xs = np.array([0.0, 0.5, 2.0, 9.0])
    out = nx.regularized_gamma_p(2.0, xs)
    assert out.shape == xs.shape
    for x, v in zip(xs, out):
        assert v == pytest.approx(nx.regularized_gamma_p(2.0, float(x)), abs=1e-14)


def test_gamma_p_domain_errors():
    with pytest.raises(nx.DomainError):
        nx.regularized_gamma_p(0.0, 1.0)
    with pytest.raises(nx.DomainError):
        nx.regularized_gamma_p(1.0, -0.1)


# ---------------------------------------------------------------------------
# confluent hypergeometric pieces
# ---------------------------------------------------------------------------


def test_hyp1f1_half_at_zero_and_slope():
    assert nx.hyp1f1_half(0.0) == 1.0
    h = 1e-7
    slope = (nx.hyp1f1_half(h) - nx.hyp1f1_half(0.0)) / h
    assert slope == pytest.approx(-0.5, abs=1e-6)


def test_hyp1f1_half_vs_series_oracle():
    for k in (0.25, 1.0, 3.0, 10.0, 50.0):
        assert nx.hyp1f1_half(k) == pytest.approx(hyp1f1_oracle(-0.5, 1.0, k), rel=1e-11)


def test_hyp1f1_half_range_error():
    with pytest.raises(nx.RangeError):
        nx.hyp1f1_half(50.5)
    with pytest.raises(nx.DomainError):
        nx.hyp1f1_half(-1.0)


def test_laguerre_half_vs_kummer_transformed_oracle():
    # L_{1/2}(-k) = exp(-k) * 1F1(3/2; 1; k); the oracle sums the
    # all-positive series directly (safe up to k ~ 30 in doubles)
    for k in (0.0, 0.5, 1.0, 5.0, 20.0):
        want = math.exp(-k) * hyp1f1_oracle(1.5, 1.0, k, terms=500)
        assert nx.laguerre_half(k) == pytest.approx(want, rel=1e-11)


def test_laguerre_half_large_argument_asymptote():
    # L_{1/2}(-k) ~ 2 sqrt(k/pi) for large k
    for k in (1e4, 1e6):
        assert nx.laguerre_half(k) == pytest.approx(2.0 * math.sqrt(k / math.pi), rel=1e-3)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


def test_integrate_known_integrals():
    assert nx.integrate(np.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-10)
    assert nx.integrate(lambda x: np.ones_like(x), 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)
    # closed form of the unit-shape fading integral
    val = nx.integrate(lambda th: (1.0 + 10.0 / np.sin(th) ** 2) ** -1.0, 0.0, math.pi / 2)
    assert val == pytest.approx((math.pi / 2.0) * (1.0 - math.sqrt(10.0 / 11.0)), abs=1e-10)


def test_integrate_oscillatory():
    val = nx.integrate(lambda x: np.cos(16.0 * x), 0.0, math.pi)
    assert val == pytest.approx(0.0, abs=1e-10)


def test_integrate_relative_tolerance_on_tiny_values():
    spec = nx.QuadratureSpec(tolerance=1e-12, rel_tolerance=1e-11)
    scale = 1e-30
    val = nx.integrate(lambda x: scale * np.exp(-x), 0.0, 1.0, spec)
    assert val == pytest.approx(scale * (1.0 - math.exp(-1.0)), rel=1e-9)


def test_integrate_subdivision_budget_error_carries_estimate():
    spec = nx.QuadratureSpec(tolerance=1e-14, max_subdivisions=1, order=2)
    with pytest.raises(nx.AccuracyError) as err:
        nx.integrate(lambda x: np.cos(50.0 * x) ** 2, 0.0, 10.0, spec)
    assert math.isfinite(err.value.estimate)


def test_integrate_rejects_bad_interval_and_nonfinite():
    with pytest.raises(nx.DomainError):
        nx.integrate(np.sin, 1.0, 1.0)
    def nan_left_of_half(x):
        with np.errstate(invalid="ignore"):
            return np.log(x - 0.5)

    with pytest.raises(nx.DomainError):
        nx.integrate(nan_left_of_half, 0.0, 1.0)


def test_fixed_order_rule():
    spec = nx.QuadratureSpec(method="fixed", tolerance=1e-9, order=30)
    assert nx.integrate(np.sin, 0.0, math.pi, spec) == pytest.approx(2.0, abs=1e-9)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        nx.QuadratureSpec(tolerance=0.0)
    with pytest.raises(ValueError):
        nx.QuadratureSpec(max_subdivisions=0)
    with pytest.raises(ValueError):
        nx.QuadratureSpec(method="simpson")
