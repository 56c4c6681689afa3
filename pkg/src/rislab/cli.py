"""Command-line front end.

Subcommands: moments | equiv | ber | snr-pdf | plan | validate.
Scenario configuration comes from a JSON document (see config module);
outputs are CSV / JSON files written to --out plus a run manifest with
SHA-256 digests of every file produced.  With a fixed --seed the CSV
outputs are byte-identical run to run, whatever RIS_LAB_WORKERS says.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 validation failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, numerics, performance, validate
from .config import (
    ConfigError,
    db_to_linear,
    linear_to_db,
    load_config,
    scenario_from_config,
    scenario_to_config,
    sweep_from_config,
)
from .equiv_channel import LrsScenario, derive, snr_cdf, snr_pdf
from .montecarlo import SimConfig, sample_snr, simulate_ber
from .phase_models import from_config as phase_from_config
from .phase_models import moment_by_integration
from .stats import ks_test

_DEFAULT_SEED = 20200709


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _json_default(obj):
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_manifest(out_dir: str, subcommand: str, resolved: dict, seed, outputs: list[str]) -> str:
    manifest = {
        "tool": "rislab",
        "version": __version__,
        "command": subcommand,
        "config": resolved,
        "seed": seed,
        "workers": os.environ.get("RIS_LAB_WORKERS"),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "outputs": {os.path.basename(p): _sha256(p) for p in outputs},
    }
    path = os.path.join(out_dir, f"{subcommand.replace('-', '_')}.manifest.json")
    _write_json(path, manifest)
    return path


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_moments(args) -> int:
    cfg = load_config(args.config)
    try:
        model = phase_from_config(cfg["phase_error"])
    except KeyError as exc:
        raise ConfigError(f"config is missing {exc.args[0]!r}") from exc
    orders = int(cfg.get("orders", 4))
    rows = []
    for p in range(1, orders + 1):
        closed = model.trig_moment(p)
        integ = moment_by_integration(model, p)
        rows.append([p, closed, integ, abs(closed - integ)])

    outputs = []
    if args.format == "json":
        path = os.path.join(args.out, "moments.json")
        _write_json(
            path,
            {
                "phase_error": model.to_config(),
                "rows": [
                    {"p": p, "closed_form": c, "integration": i, "abs_diff": d}
                    for p, c, i, d in rows
                ],
            },
        )
    else:
        path = os.path.join(args.out, "moments.csv")
        _write_csv(path, ["p", "closed_form", "integration", "abs_diff"], rows)
    outputs.append(path)
    _write_manifest(args.out, "moments", {**cfg, "orders": orders}, None, outputs)
    for p, c, i, d in rows:
        print(f"p={p}  closed={c!r}  integration={i!r}  |diff|={d:.3e}")
    return 0


def _cmd_equiv(args) -> int:
    cfg = load_config(args.config)
    scenario = scenario_from_config(cfg)
    ch = derive(scenario)
    path = os.path.join(args.out, "equiv.json")
    _write_json(path, ch.to_dict())
    _write_manifest(args.out, "equiv", scenario_to_config(scenario), None, [path])
    print(json.dumps(ch.to_dict(), indent=2, sort_keys=True))
    return 0


def _cmd_ber(args) -> int:
    cfg = load_config(args.config)
    scenario = scenario_from_config(cfg)
    sweep_db = sweep_from_config(cfg)
    points = tuple(db_to_linear(g) for g in sweep_db)

    channels = [
        derive(LrsScenario(scenario.n, g0, scenario.fading_sr, scenario.fading_rd, scenario.phase_error))
        for g0 in points
    ]
    analytic = [performance.ber_bpsk(ch) for ch in channels]
    asymptote = [performance.ber_high_snr(ch) for ch in channels]

    sim = [None] * len(points)
    halfwidth = [None] * len(points)
    if args.simulate:
        res = simulate_ber(
            SimConfig(
                scenario,
                trials=args.trials,
                master_seed=args.seed,
                snr_points=points,
                estimator=args.estimator,
            )
        )
        sim = list(res.ber)
        halfwidth = list(res.ci_halfwidth)

    rows = [
        [gdb, linear_to_db(ch.gamma_bar), ana, asy, s, hw]
        for gdb, ch, ana, asy, s, hw in zip(
            sweep_db, channels, analytic, asymptote, sim, halfwidth
        )
    ]
    header = ["gamma0_db", "gamma_bar_db", "ber_analytic", "ber_asymptote", "ber_sim", "ci_halfwidth"]
    outputs = []
    if args.format == "json":
        path = os.path.join(args.out, "ber.json")
        _write_json(path, {"rows": [dict(zip(header, r)) for r in rows]})
    else:
        path = os.path.join(args.out, "ber.csv")
        _write_csv(path, header, rows)
    outputs.append(path)
    resolved = {
        **scenario_to_config(scenario),
        "sweep": cfg.get("sweep"),
        "simulate": bool(args.simulate),
        "trials": args.trials,
        "estimator": args.estimator,
    }
    _write_manifest(args.out, "ber", resolved, args.seed if args.simulate else None, outputs)
    print(f"wrote {path} ({len(rows)} sweep points)")
    return 0


def _cmd_snr_pdf(args) -> int:
    cfg = load_config(args.config)
    scenario = scenario_from_config(cfg)
    ch = derive(scenario)
    upper = ch.gamma_bar * (1.0 + 12.0 / math.sqrt(ch.m))
    edges = np.linspace(0.0, upper, args.bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    width = float(edges[1] - edges[0])
    pdf = snr_pdf(ch, centers)

    outputs = []
    fit = None
    if args.simulate:
        smp = sample_snr(
            SimConfig(scenario, trials=args.trials, master_seed=args.seed), bin_edges=edges
        )
        density = smp.histogram / (smp.total_trials * width)
        threshold = cfg.get("ks_threshold")  # calibrated per scenario; default is the 99% critical value
        fit = ks_test(smp.values, lambda g: snr_cdf(ch, g), threshold=threshold)
        fit_path = os.path.join(args.out, "snr_fit.json")
        _write_json(fit_path, fit.to_dict())
        outputs.append(fit_path)
    else:
        density = [None] * len(centers)

    rows = [
        [float(c), width, d if d is None else float(d), float(p)]
        for c, d, p in zip(centers, density, pdf)
    ]
    path = os.path.join(args.out, "snr_pdf.csv")
    _write_csv(path, ["bin_center", "bin_width", "density_sim", "pdf_analytic"], rows)
    outputs.insert(0, path)
    resolved = {
        **scenario_to_config(scenario),
        "bins": args.bins,
        "simulate": bool(args.simulate),
        "trials": args.trials,
    }
    _write_manifest(args.out, "snr-pdf", resolved, args.seed if args.simulate else None, outputs)
    if fit is not None:
        print(json.dumps(fit.to_dict(), indent=2, sort_keys=True))
    print(f"wrote {path}")
    return 0


def _cmd_plan(args) -> int:
    cfg = load_config(args.config)
    try:
        pe = phase_from_config(cfg["phase_error"])
        from .fading import from_config as fading_from_config

        a = math.sqrt(
            fading_from_config(cfg["fading_sr"]).mean_magnitude()
            * fading_from_config(cfg["fading_rd"]).mean_magnitude()
        )
    except KeyError as exc:
        raise ConfigError(f"config is missing {exc.args[0]!r}") from exc
    phi1 = pe.trig_moment(1)
    phi2 = pe.trig_moment(2)
    gamma0 = db_to_linear(float(cfg.get("gamma0_db", 0.0)))

    report: dict = {"phi1": phi1, "phi2": phi2, "a": a}
    if "target_gd" not in cfg and "target_gc" not in cfg:
        raise ConfigError("plan config needs 'target_gd' and/or 'target_gc'")
    if "target_gd" in cfg:
        target = float(cfg["target_gd"])
        n = performance.reflectors_for_diversity(target, a, phi1, phi2)
        g = performance.gains(
            LrsScenario(n, gamma0, *_plan_fading(cfg), pe)
        )
        report["diversity"] = {
            "target_gd": target,
            "n": n,
            "achieved_gd": g.diversity_gain,
            "achieved_gc": g.coding_gain,
        }
    if "target_gc" in cfg:
        target = float(cfg["target_gc"])
        plan = performance.reflectors_for_coding_gain(target, gamma0, a, phi1, phi2)
        entry = {
            "target_gc": target,
            "feasible": plan.feasible,
            "n": plan.n,
            "achieved_gc": plan.achieved,
            "searched_up_to": plan.searched_up_to,
        }
        if plan.feasible:
            g = performance.gains(LrsScenario(plan.n, gamma0, *_plan_fading(cfg), pe))
            entry["achieved_gd"] = g.diversity_gain
        report["coding"] = entry

    path = os.path.join(args.out, "plan.json")
    _write_json(path, report)
    _write_manifest(args.out, "plan", cfg, None, [path])
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def _plan_fading(cfg):
    from .fading import from_config as fading_from_config

    return fading_from_config(cfg["fading_sr"]), fading_from_config(cfg["fading_rd"])


def _cmd_validate(args) -> int:
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    try:
        results = validate.run_suite(args.suite, **overrides)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    payload = {
        "suite": args.suite,
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }
    path = os.path.join(args.out, f"validate_{args.suite.replace('-', '_')}.json")
    _write_json(path, payload)
    _write_manifest(args.out, "validate", {"suite": args.suite, **overrides}, None, [path])
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}")
    print(f"wrote {path}")
    return 0 if payload["passed"] else 4


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rislab",
        description="Analytics and Monte Carlo simulation of reflecting-surface links",
    )
    parser.add_argument("--version", action="version", version=f"rislab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="scenario JSON document")
        p.add_argument("--out", default=".", help="output directory (created if absent)")

    p = sub.add_parser("moments", help="trigonometric moments, closed form vs quadrature")
    common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("equiv", help="equivalent-channel parameters")
    common(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("ber", help="BER curves over a single-reflector SNR sweep")
    common(p)
    p.add_argument("--simulate", action="store_true", help="add Monte Carlo columns")
    p.add_argument("--trials", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=_DEFAULT_SEED)
    p.add_argument("--estimator", choices=("direct", "semianalytic"), default="semianalytic")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_ber)

    p = sub.add_parser("snr-pdf", help="analytic SNR density, histogram and fit report")
    common(p)
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--trials", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=_DEFAULT_SEED)
    p.add_argument("--bins", type=int, default=60)
    p.set_defaults(func=_cmd_snr_pdf)

    p = sub.add_parser("plan", help="reflector count for a diversity/coding-gain target")
    common(p)
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("validate", help="run a named validation suite")
    p.add_argument("suite", help=f"one of {sorted(validate.SUITES)} or 'all'")
    p.add_argument("--out", default=".")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        os.makedirs(args.out, exist_ok=True)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except numerics.NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
