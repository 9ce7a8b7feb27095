"""Result records and their CSV / JSON serialization.

The CSV table is the plotting contract: exactly the columns
``delta,d1,d2,d1_fraction,ci_lo,ci_hi``, one row per sweep point, floats at
full (round-trippable) precision. JSON carries the complete record including
config echo and provenance; the timestamp lives only in the JSON form, so
identical runs produce byte-identical CSV files.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .analysis import binomial_ci
from .config import ExperimentConfig, config_from_dict, config_to_dict
from .experiment import PhotonTrace, SweepPoint
from .optics import DetectorCounts, OutcomeKind, Path

SCHEMA_VERSION = "1"
CSV_COLUMNS = ("delta", "d1", "d2", "d1_fraction", "ci_lo", "ci_hi")
CHILD_SEED_FUNCTION = "splitmix64"


@dataclass(frozen=True)
class OutputRecord:
    schema_version: str
    kind: str  # "single-bs" | "mzi" | "sweep"
    config: ExperimentConfig
    points: tuple[SweepPoint, ...]
    analysis: dict | None
    provenance: dict
    trace: tuple[PhotonTrace, ...] | None = None


def build_record(
    kind: str,
    config: ExperimentConfig,
    points: list[SweepPoint] | tuple[SweepPoint, ...],
    analysis: dict | None = None,
    trace: tuple[PhotonTrace, ...] | None = None,
    timestamp: str | None = None,
) -> OutputRecord:
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat()
    provenance = {
        "master_seed": config.master_seed,
        "child_seed_function": CHILD_SEED_FUNCTION,
        "build": f"mzsim {__version__} / numpy {np.__version__}",
        "timestamp": timestamp,
    }
    return OutputRecord(
        SCHEMA_VERSION, kind, config, tuple(points), analysis, provenance, trace
    )


def record_to_dict(record: OutputRecord) -> dict:
    data = {
        "schema_version": record.schema_version,
        "kind": record.kind,
        "config": config_to_dict(record.config),
        "points": [
            {
                "delta": p.delta,
                "d1": p.counts.d1,
                "d2": p.counts.d2,
                "d1_fraction": p.d1_fraction,
            }
            for p in record.points
        ],
        "analysis": record.analysis,
        "provenance": record.provenance,
    }
    if record.trace is not None:
        data["trace"] = [
            [
                t.emitted_at,
                t.first.value,
                t.path.value,
                None if t.second is None else t.second.value,
            ]
            for t in record.trace
        ]
    return data


def record_from_dict(data: dict) -> OutputRecord:
    points = tuple(
        SweepPoint(
            p["delta"], DetectorCounts(p["d1"], p["d2"]), p["d1_fraction"]
        )
        for p in data["points"]
    )
    trace = None
    if "trace" in data:
        trace = tuple(
            PhotonTrace(
                row[0],
                OutcomeKind(row[1]),
                Path(row[2]),
                None if row[3] is None else OutcomeKind(row[3]),
            )
            for row in data["trace"]
        )
    return OutputRecord(
        data["schema_version"],
        data["kind"],
        config_from_dict(data["config"]),
        points,
        data["analysis"],
        data["provenance"],
        trace,
    )


def write_json(record: OutputRecord, path: str | os.PathLike) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(record_to_dict(record), fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_json(path: str | os.PathLike) -> OutputRecord:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return record_from_dict(json.load(fh))
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc


def write_csv(
    record: OutputRecord, path: str | os.PathLike, confidence: float = 0.95
) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for p in record.points:
                ci = binomial_ci(p.counts.d1, p.counts.total, confidence)
                writer.writerow(
                    [
                        repr(p.delta),
                        p.counts.d1,
                        p.counts.d2,
                        repr(p.d1_fraction),
                        repr(ci.lo),
                        repr(ci.hi),
                    ]
                )
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_sweep_csv(path: str | os.PathLike) -> list[SweepPoint]:
    """Read back a results table written by :func:`write_csv`."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or tuple(header) != CSV_COLUMNS:
                raise ValueError(f"{path} is not a results table (header {header!r})")
            points = []
            for row in reader:
                if not row:
                    continue
                delta, d1, d2, frac = float(row[0]), int(row[1]), int(row[2]), float(row[3])
                points.append(SweepPoint(delta, DetectorCounts(d1, d2), frac))
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    if not points:
        raise ValueError(f"{path} contains no data rows")
    return points
