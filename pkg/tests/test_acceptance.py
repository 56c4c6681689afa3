"""Acceptance suite: one test per agreed criterion, each printing a
pass/fail line with the measured numbers (run with ``pytest -s`` to see
the lines as they stream).

Three checks fail by measured, systematic margins rather than
statistical noise; their failure messages carry the numbers.  See
test_simulated_ber_tracks_prediction_within_3_halfwidths,
test_headline_db_gaps_at_1e_minus_3, and the large-shape clause of
test_high_snr_asymptote: each documents a quantified disagreement
between the stated tolerance and what the model family actually does.
"""

import json
import os
import subprocess
import sys
import time

from rislab import validate


def _report(label: str, result: validate.CheckResult, elapsed: float, budget: float):
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {label} ({elapsed:.1f}s, budget {budget:.0f}s)")
    return result


def _run(label, budget, fn, **kwargs):
    t0 = time.monotonic()
    result = fn(**kwargs)
    elapsed = time.monotonic() - t0
    _report(label, result, elapsed, budget)
    assert elapsed < budget, f"{label}: runtime {elapsed:.1f}s exceeded {budget:.0f}s"
    return result


def test_trig_moment_closed_forms_match_quadrature():
    # closed-form circular moments agree with numerical integration to
    # 1e-8 absolute for the estimation and quantization error models
    res = _run("trig-moment closed forms vs quadrature", 1.0, validate.check_moment_formulas)
    assert res.passed, f"max |closed - integrated| = {res.details['max_abs_diff']:.3e}"


def test_composite_coefficient_gaussian_limit_moments():
    # 1e5 draws at n=256: sample mean/variances of Re(H), Im(H) within
    # 5 standard errors of the limit parameters, covariance within 5 SE of 0
    res = _run("Gaussian-limit moments at n=256", 30.0, validate.check_gaussian_limit)
    assert res.passed, f"z-scores {res.details['z_scores']}"


def test_snr_distribution_matches_gamma_law():
    # 1e5 SNR samples vs the gamma distribution function: KS < 0.05 at
    # n=16, < 0.03 at n=256, improving with n (calibrated thresholds)
    res = _run("instantaneous-SNR gamma fit (n=16, 256)", 60.0, validate.check_snr_fit)
    reports = res.details["reports"]
    assert res.passed, {k: v["ks_distance"] for k, v in reports.items()}


def test_simulated_ber_tracks_prediction_within_3_halfwidths():
    # semi-analytic estimator, 1e6 trials per sweep point, n=32, five
    # error models; simulated BER must sit within 3 reported confidence
    # half-widths of the equivalent-channel prediction wherever the
    # predicted BER is at least 1e-5
    res = _run("simulated vs predicted BER at n=32", 600.0, validate.check_ber_agreement)
    bad = [p for p in res.details["points"] if not p["ok"]]
    assert res.passed, (
        f"{len(bad)} of {len(res.details['points'])} sweep points disagree; "
        "the gap is systematic (the finite-n mean power 1/n + (1-1/n)phi1^2 a^4 "
        "exceeds the limit value phi1^2 a^4, which a steep BER curve amplifies "
        "far beyond a CI that shrinks with trials); worst offenders: "
        + ", ".join(
            f"{p['model']}@{p['gamma0_db']:.1f}dB z={p['z']:.0f}"
            for p in sorted(bad, key=lambda q: -q["z"])[:3]
        )
    )


def test_headline_db_gaps_at_1e_minus_3():
    # analytic-curve gaps at BER 1e-3: von Mises kappa=2 and 1-bit
    # quantization 5 +- 1 dB from ideal, kappa=8 within 1.5 dB, 2-bit
    # quantization below a third of the 1-bit gap
    res = _run("headline dB gaps at BER 1e-3", 10.0, validate.check_headline_gaps)
    gaps = {k: round(v, 3) for k, v in res.details["gaps_db"].items()}
    assert res.passed, (
        f"measured gaps (dB): {gaps}; the kappa=2 gap at BER 1e-3 is 3.96 dB and "
        "only reaches 5 dB near BER 3e-6, i.e. at the deep-tail end of the curves "
        "rather than at the 1e-3 level"
    )


def test_shape_parameter_two_route_identity():
    # mu^2/(4 sigma_U^2) equals the closed form in (n, a, phi1, phi2) to
    # 1e-12 relative over 1000 random parameter tuples
    res = _run("shape-parameter route identity", 1.0, validate.check_shape_identity)
    assert res.passed, f"max relative difference {res.details['max_rel_diff']:.3e}"


def test_high_snr_asymptote():
    # the power-law asymptote stays within [0.95, 1.05] of the exact BER
    # from the 10^(-2m) crossing onward, for shapes 1, 2 and 12.88; the
    # log-log slope of the asymptote recovers m to 1e-10
    res = _run("high-SNR asymptote band and slope", 10.0, validate.check_asymptote)
    rows = res.details["rows"]
    assert all(r["slope_ok"] for r in rows), rows
    assert res.passed, (
        "ratio at the 10^(-2m) crossing per shape: "
        + ", ".join(f"m={r['m']:.4g}: {r['ratio_at_crossing']:.3f}" for r in rows)
        + "; the asymptote's relative error decays like 1/gamma_bar with a "
        "coefficient that grows with m, so the largest shape is still 16% high "
        "at its crossing and only enters the 5% band about 5 dB deeper"
    )


def test_cgf_gamma_reduction_error_halves_when_n_doubles():
    # |exact CGF - single-gamma CGF| at matched t shrinks by a factor in
    # [1.6, 2.4] per doubling of n over {64, 128, 256}
    res = _run("CGF reduction error scaling", 1.0, validate.check_cgf_error_scaling)
    assert res.passed, res.details["rows"]


def test_uniform_errors_reduce_to_rayleigh_link():
    # complete phase uncertainty at n=256: simulated BER matches the
    # closed Rayleigh form with average SNR n*gamma0 within 3 confidence
    # half-widths at three sweep points
    res = _run("uniform-error Rayleigh equivalence", 120.0, validate.check_uniform_rayleigh)
    assert res.passed, res.details["points"]


def test_csv_outputs_identical_across_worker_counts(tmp_path):
    # the BER sweep command, same seed, run under different worker
    # counts, must produce byte-identical CSVs (reduced trial count; the
    # block structure and reduction order do not depend on it)
    cfg = tmp_path / "config.json"
    cfg.write_text(
        json.dumps(
            {
                "n": 32,
                "gamma0_db": -16.0,
                "fading_sr": {"type": "rician", "k_factor": 1.0},
                "fading_rd": {"type": "rayleigh"},
                "phase_error": {"type": "von_mises", "kappa": 8.0},
                "sweep": {"start_db": -18.0, "stop_db": -14.0, "step_db": 2.0},
            }
        )
    )
    outputs = []
    t0 = time.monotonic()
    for workers, sub in (("1", "w1"), ("3", "w3")):
        out = tmp_path / sub
        proc = subprocess.run(
            [
                sys.executable, "-m", "rislab", "ber",
                "--config", str(cfg), "--out", str(out),
                "--simulate", "--trials", "200000", "--seed", "77",
            ],
            capture_output=True,
            text=True,
            env={**os.environ, "RIS_LAB_WORKERS": workers},
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append((out / "ber.csv").read_bytes())
    same = outputs[0] == outputs[1]
    print(f"[{'PASS' if same else 'FAIL'}] worker-count determinism ({time.monotonic()-t0:.1f}s)")
    assert same, "ber.csv differs between RIS_LAB_WORKERS=1 and =3"
