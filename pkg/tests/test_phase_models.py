"""Phase-error models: closed-form moments, sampling, serialization."""

import math

import numpy as np
import pytest

from rislab import numerics as nx
from rislab import phase_models as pm

ALL_VARIANTS = [
    pm.NoError(),
    pm.VonMises(0.5),
    pm.VonMises(8.0),
    pm.Quantizer(1),
    pm.Quantizer(3),
    pm.UniformCircle(),
    pm.Product((pm.VonMises(2.0), pm.Quantizer(1))),
]


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def test_quantizer_one_bit_moments():
    q1 = pm.Quantizer(1)
    assert q1.trig_moment(1) == pytest.approx(2.0 / math.pi, rel=1e-14)
    assert q1.trig_moment(2) == 0.0  # sin(pi)/pi, exactly zero by construction
    assert q1.trig_moment(4) == 0.0


def test_quantizer_three_bit_first_moment():
    q3 = pm.Quantizer(3)
    w = math.pi / 8.0
    assert q3.trig_moment(1) == pytest.approx(math.sin(w) / w, rel=1e-14)


def test_von_mises_moment_is_bessel_ratio():
    # frozen from the factorial-series oracle: I_1(2)/I_0(2)
    assert pm.VonMises(2.0).trig_moment(1) == pytest.approx(0.697774657964008, rel=1e-10)


def test_uniform_circle_moments_vanish():
    u = pm.UniformCircle()
    assert u.trig_moment(0) == 1.0
    for p in (1, 2, 5):
        assert u.trig_moment(p) == 0.0


def test_zero_concentration_matches_uniform():
    vm0 = pm.VonMises(0.0)
    for p in (1, 2, 3):
        assert vm0.trig_moment(p) == pm.UniformCircle().trig_moment(p)


def test_moment_order_zero_is_one_and_bounded():
    for model in ALL_VARIANTS:
        assert model.trig_moment(0) == 1.0
        for p in (1, 2, 3):
            assert abs(model.trig_moment(p)) <= 1.0


def test_von_mises_moments_increase_with_concentration():
    kappas = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 50.0]
    for p in (1, 2, 3):
        vals = [pm.VonMises(k).trig_moment(p) for k in kappas]
        assert all(b > a for a, b in zip(vals, vals[1:]))
    # degenerate limit
    assert pm.VonMises(1e6).trig_moment(1) > 1.0 - 1e-5


def test_product_single_component_is_identity():
    vm = pm.VonMises(3.0)
    prod = pm.Product((vm,))
    for p in (0, 1, 2, 3):
        assert prod.trig_moment(p) == vm.trig_moment(p)


def test_product_moments_multiply():
    vm, qz = pm.VonMises(2.0), pm.Quantizer(2)
    prod = pm.Product((vm, qz))
    for p in (1, 2, 3):
        assert prod.trig_moment(p) == pytest.approx(
            vm.trig_moment(p) * qz.trig_moment(p), rel=1e-14
        )


def test_negative_order_rejected():
    with pytest.raises(nx.DomainError):
        pm.VonMises(1.0).trig_moment(-1)


def test_bad_parameters_rejected():
    with pytest.raises(nx.DomainError):
        pm.VonMises(-0.5)
    with pytest.raises(nx.DomainError):
        pm.Quantizer(0)
    with pytest.raises(nx.DomainError):
        pm.Product(())


# ---------------------------------------------------------------------------
# integration oracle
# ---------------------------------------------------------------------------


def test_von_mises_moments_match_integration():
    for kappa in (0.5, 2.0, 8.0):
        model = pm.VonMises(kappa)
        for p in (1, 2):
            closed = model.trig_moment(p)
            integ = pm.moment_by_integration(model, p)
            assert abs(closed - integ) < 1e-8


def test_quantizer_moments_match_integration():
    for bits in (1, 2, 3):
        model = pm.Quantizer(bits)
        for p in (1, 2):
            assert abs(model.trig_moment(p) - pm.moment_by_integration(model, p)) < 1e-8


def test_uniform_integration_moment_is_zero():
    assert abs(pm.moment_by_integration(pm.UniformCircle(), 2)) < 1e-10


def test_product_integration_moment_composes():
    prod = pm.Product((pm.VonMises(2.0), pm.Quantizer(1), pm.NoError()))
    assert pm.moment_by_integration(prod, 1) == pytest.approx(
        prod.trig_moment(1), abs=1e-8
    )


def test_integration_oracle_guards():
    with pytest.raises(nx.DomainError):
        pm.moment_by_integration(pm.NoError(), 1)
    with pytest.raises(nx.RangeError):
        pm.moment_by_integration(pm.VonMises(1.0), 17)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def test_no_error_samples_are_zero():
    rng = np.random.default_rng(1)
    assert pm.NoError().sample(rng) == 0.0
    assert np.all(pm.NoError().sample(rng, 1000) == 0.0)


def test_quantizer_sample_support():
    rng = np.random.default_rng(2)
    th = pm.Quantizer(1).sample(rng, 10**5)
    assert np.all(np.abs(th) <= math.pi / 2.0)
    th3 = pm.Quantizer(3).sample(rng, 10**5)
    assert np.all(np.abs(th3) <= math.pi / 8.0)


def test_samples_lie_on_circle_interval():
    rng = np.random.default_rng(3)
    for model in ALL_VARIANTS:
        th = model.sample(rng, 5000)
        assert np.all(th >= -math.pi) and np.all(th < math.pi + 1e-12)


def test_von_mises_sampler_matches_bessel_ratio():
    # empirical first circular moment within 4 standard errors at 1e6 draws
    rng = np.random.default_rng(44)
    model = pm.VonMises(8.0)
    th = model.sample(rng, 10**6)
    c = np.cos(th)
    se = c.std(ddof=1) / 1000.0
    assert abs(c.mean() - model.trig_moment(1)) < 4.0 * se
    assert np.abs(np.sin(th).mean()) < 4.0 / 1000.0  # symmetry: zero mean direction


@pytest.mark.parametrize(
    "model",
    [
        pm.VonMises(0.5),
        pm.VonMises(8.0),
        pm.Quantizer(2),
        pm.UniformCircle(),
        pm.Product((pm.VonMises(2.0), pm.Quantizer(1))),
    ],
    ids=lambda m: str(m.to_config()),
)
def test_sampling_consistent_with_moments(model):
    rng = np.random.default_rng(7007)
    th = model.sample(rng, 10**6)
    for p in (1, 2, 3):
        c = np.cos(p * th)
        se = max(c.std(ddof=1), 1e-12) / 1000.0
        assert abs(c.mean() - model.trig_moment(p)) < 5.0 * se


def test_tiny_concentration_sampling_is_near_uniform():
    rng = np.random.default_rng(5)
    th = pm.VonMises(1e-9).sample(rng, 10**5)
    assert abs(np.cos(th).mean()) < 5.0 / math.sqrt(2.0 * 10**5)


def test_scalar_sample_shape():
    rng = np.random.default_rng(6)
    for model in ALL_VARIANTS:
        assert np.ndim(model.sample(rng)) == 0


# ---------------------------------------------------------------------------
# densities and serialization
# ---------------------------------------------------------------------------


def test_pdfs_normalize():
    grid_spec = nx.QuadratureSpec(tolerance=1e-10, max_subdivisions=4000)
    for model in (pm.VonMises(2.0), pm.Quantizer(2), pm.UniformCircle()):
        total = nx.integrate(model.pdf, -math.pi, math.pi, grid_spec)
        assert total == pytest.approx(1.0, abs=1e-8)


def test_no_error_has_no_density():
    assert not pm.NoError().has_density
    with pytest.raises(nx.DomainError):
        pm.NoError().pdf(0.0)


def test_config_round_trip():
    for model in ALL_VARIANTS:
        again = pm.from_config(model.to_config())
        assert again == model


def test_config_examples():
    assert pm.from_config({"type": "von_mises", "kappa": 8}) == pm.VonMises(8.0)
    assert pm.from_config({"type": "quantizer", "bits": 2}) == pm.Quantizer(2)
    assert pm.from_config({"type": "none"}) == pm.NoError()
    assert pm.from_config({"type": "uniform"}) == pm.UniformCircle()
    nested = {"type": "product", "components": [{"type": "uniform"}, {"type": "none"}]}
    assert pm.from_config(nested) == pm.Product((pm.UniformCircle(), pm.NoError()))
    with pytest.raises(nx.DomainError):
        pm.from_config({"type": "wrapped_cauchy"})
