#!/usr/bin/env python3
"""Reproduce the headline fringe experiment and write its plot table.

Runs the reference config (or a config file given with --config) over a
50-step sweep of two fringe periods, writes the CSV table, and prints the
fit, visibility, and the comparison against the ideal cos^2 curve.

A plot of d1_fraction against delta from the CSV is the fringe figure; any
plotting tool will do, e.g.:

    python3 scripts/run_fringe_sweep.py --out fringes.csv
    gnuplot -e "set datafile separator ','; plot 'fringes.csv' us 1:4 w lp"
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mzsim.analysis import compare_to_qm, visibility
from mzsim.config import ExperimentConfig, load_config
from mzsim.experiment import default_sweep_deltas, run_sweep
from mzsim.output import build_record, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--config", default=None, help="JSON config (default: reference)")
    parser.add_argument("--out", default="fringes.csv", help="CSV destination")
    parser.add_argument("--steps", type=int, default=50)
    parser.add_argument("--photons", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--parallel", type=int, default=1)
    args = parser.parse_args()

    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if args.photons is not None:
        cfg = replace(cfg, photon_count=args.photons)
    if args.seed is not None:
        cfg = replace(cfg, master_seed=args.seed)
    cfg.validate()

    sweep = run_sweep(cfg, default_sweep_deltas(cfg, steps=args.steps), jobs=args.parallel)
    write_csv(build_record("sweep", cfg, sweep.points), args.out)

    qm = compare_to_qm(sweep, cfg.particle_frequency)
    fit = qm.fit
    print(f"sweep: {len(sweep.points)} points, photons/point={cfg.photon_count}")
    print(f"visibility: {visibility(sweep.fractions):.4f}")
    if fit is not None:
        print(
            f"fit: amplitude={fit.amplitude:.4f} offset={fit.offset:.4f} "
            f"r_squared={fit.r_squared:.4f}"
        )
        print(
            f"period: fitted={qm.fitted_period:.4f} ideal={qm.ideal_period:.4f} "
            f"(model visibility {qm.model_visibility:.4f} vs ideal {qm.ideal_visibility:.1f})"
        )
    print(f"table written to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
