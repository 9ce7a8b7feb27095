"""Command-line interface.

Subcommands: ``single-bs``, ``mzi``, ``sweep``, ``analyze``, ``compare-qm``.
Flag values override config-file values, which override the built-in
defaults (the pinned reference setup).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .analysis import binomial_ci, compare_to_qm, fit_sine, visibility
from .config import ConfigError, ExperimentConfig, load_config
from .experiment import (
    SweepPoint,
    SweepResult,
    default_sweep_deltas,
    run_mzi,
    run_single_bs,
    run_sweep,
)
from .output import build_record, read_sweep_csv, write_csv, write_json


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file")
    common.add_argument("--seed", type=int, metavar="U64", help="master seed override")
    common.add_argument("--photons", type=int, metavar="N", help="photon count override")
    common.add_argument("--out", metavar="PATH", help="write results to this file")
    common.add_argument(
        "--format", choices=("csv", "json"), default=None,
        help="output format (default: by --out suffix, else csv)",
    )
    common.add_argument(
        "--trace", action="store_true",
        help="keep per-photon records (JSON output of single runs)",
    )
    common.add_argument(
        "--parallel", type=int, default=1, metavar="K",
        help="worker processes for sweep points",
    )

    parser = argparse.ArgumentParser(
        prog="mzsim",
        description="Deterministic-particle interferometer simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("single-bs", parents=[common], help="photon stream against one splitter")
    p.set_defaults(func=cmd_single_bs)

    p = sub.add_parser("mzi", parents=[common], help="full two-splitter run")
    p.add_argument("--delta", type=float, metavar="X", help="path-length difference override")
    p.set_defaults(func=cmd_mzi)

    p = sub.add_parser("sweep", parents=[common], help="sweep the path-length difference")
    p.add_argument("--steps", type=int, default=50, metavar="N", help="sweep points (default 50)")
    p.add_argument(
        "--delta-max", type=float, default=None, metavar="X",
        help="sweep end (default two fringe periods)",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("analyze", parents=[common], help="fit and summarize a results CSV")
    p.add_argument("results", metavar="RESULTS", help="CSV written by a previous run")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare-qm", parents=[common], help="compare a results CSV to the ideal curve")
    p.add_argument("results", metavar="RESULTS", help="CSV written by a previous run")
    p.set_defaults(func=cmd_compare_qm)

    return parser


def _effective_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.photons is not None:
        overrides["photon_count"] = args.photons
    delta = getattr(args, "delta", None)
    if delta is not None:
        overrides["delta"] = delta
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg.validate()


def _emit(record, args: argparse.Namespace) -> None:
    if not args.out:
        return
    fmt = args.format
    if fmt is None:
        fmt = "json" if str(args.out).endswith(".json") else "csv"
    if fmt == "json":
        write_json(record, args.out)
    else:
        write_csv(record, args.out)


def _run_one(args: argparse.Namespace, kind: str) -> int:
    cfg = _effective_config(args)
    runner = run_single_bs if kind == "single-bs" else run_mzi
    record = runner(cfg, trace=args.trace)
    counts = record.counts
    frac = counts.d1_fraction
    ci = binomial_ci(counts.d1, counts.total)
    analysis = {
        "d1_fraction": frac,
        "ci_lo": ci.lo,
        "ci_hi": ci.hi,
        "confidence": ci.confidence,
    }
    out = build_record(kind, cfg, [SweepPoint(cfg.delta, counts, frac)], analysis,
                       trace=record.trace)
    _emit(out, args)
    print(
        f"{kind}: photons={counts.total} d1={counts.d1} d2={counts.d2} "
        f"d1_fraction={frac:.6f} ci95=[{ci.lo:.6f}, {ci.hi:.6f}]"
    )
    return 0


def cmd_single_bs(args: argparse.Namespace) -> int:
    return _run_one(args, "single-bs")


def cmd_mzi(args: argparse.Namespace) -> int:
    return _run_one(args, "mzi")


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _effective_config(args)
    if args.trace:
        print("note: --trace applies to single-bs/mzi runs; ignored for sweep", file=sys.stderr)
    deltas = default_sweep_deltas(cfg, steps=args.steps, delta_max=args.delta_max)
    sweep = run_sweep(cfg, deltas, jobs=max(1, args.parallel))
    fit = fit_sine(list(zip(sweep.deltas, sweep.fractions))) if len(deltas) >= 8 else None
    vis = visibility(sweep.fractions)
    qm = compare_to_qm(sweep, cfg.particle_frequency)
    analysis = {
        "visibility": vis,
        "fit": None
        if fit is None
        else {
            "amplitude": fit.amplitude,
            "angular_frequency": fit.angular_frequency,
            "phase": fit.phase,
            "offset": fit.offset,
            "r_squared": fit.r_squared,
            "converged": fit.converged,
        },
        "qm": {
            "ideal_period": qm.ideal_period,
            "fitted_period": qm.fitted_period,
            "model_visibility": qm.model_visibility,
            "visibility_gap": qm.visibility_gap,
            "max_abs_residual": max(abs(r) for r in qm.residuals),
        },
    }
    record = build_record("sweep", cfg, sweep.points, analysis)
    _emit(record, args)
    print(f"sweep: {len(deltas)} points, photons/point={cfg.photon_count}, visibility={vis:.4f}")
    if fit is not None:
        print(
            f"fit: amplitude={fit.amplitude:.4f} angular_frequency={fit.angular_frequency:.4f} "
            f"phase={fit.phase:.4f} offset={fit.offset:.4f} r_squared={fit.r_squared:.4f} "
            f"converged={fit.converged}"
        )
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    points = read_sweep_csv(args.results)
    pairs = [(p.delta, p.d1_fraction) for p in points]
    vis = visibility([f for _, f in pairs])
    if len(points) >= 8 and len({d for d, _ in pairs}) >= 2:
        fit = fit_sine(pairs)
        print(
            f"fit: amplitude={fit.amplitude:.6f} angular_frequency={fit.angular_frequency:.6f} "
            f"phase={fit.phase:.6f} offset={fit.offset:.6f} r_squared={fit.r_squared:.6f} "
            f"converged={fit.converged}"
        )
    else:
        print("fit: skipped (needs at least 8 rows with 2 distinct deltas)")
    print(f"visibility: {vis:.6f}")
    print("delta,d1_fraction,ci_lo,ci_hi")
    for p in points:
        ci = binomial_ci(p.counts.d1, p.counts.total)
        print(f"{p.delta},{p.d1_fraction:.6f},{ci.lo:.6f},{ci.hi:.6f}")
    return 0


def cmd_compare_qm(args: argparse.Namespace) -> int:
    cfg = _effective_config(args)
    points = read_sweep_csv(args.results)
    sweep = SweepResult(cfg, tuple(points))
    qm = compare_to_qm(sweep, cfg.particle_frequency)
    rms = (sum(r * r for r in qm.residuals) / len(qm.residuals)) ** 0.5
    print(
        f"residuals: max_abs={max(abs(r) for r in qm.residuals):.6f} rms={rms:.6f} "
        f"(model fraction minus ideal cos^2 at {len(qm.residuals)} points)"
    )
    print(
        f"visibility: model={qm.model_visibility:.6f} ideal={qm.ideal_visibility:.6f} "
        f"gap={qm.visibility_gap:.6f} (the model saturates below the ideal contrast)"
    )
    if qm.fitted_period is not None:
        rel = abs(qm.fitted_period - qm.ideal_period) / qm.ideal_period
        print(
            f"period: fitted={qm.fitted_period:.6f} ideal={qm.ideal_period:.6f} "
            f"relative_error={rel:.6f}"
        )
    else:
        print(f"period: fit skipped, ideal={qm.ideal_period:.6f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
