"""Run orchestration: single-splitter runs, full interferometer runs, and
reproducible path-length sweeps.

Every run is fully determined by its :class:`~mzsim.config.ExperimentConfig`.
Random numbers are drawn from one ``numpy`` PCG64 generator seeded with the
config's master seed, in a fixed order: first the emission gaps, then the
initial photon phases. Sweep points use independent child seeds derived from
the master seed and the bit pattern of each delta (see
:func:`derive_child_seed`), which makes sweep results order-independent and
safe to evaluate in parallel.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .config import ExperimentConfig
from .optics import DetectorCounts, OutcomeKind, Path, generate_emissions
from .phases import TWO_PI, WRAP_SNAP, wrap_phase

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_U64 = 0xFFFFFFFFFFFFFFFF


def derive_child_seed(master_seed: int, index: int) -> int:
    """SplitMix64 child seed for (master_seed, index).

    Computes the SplitMix64 output for state ``master_seed + (index+1)*gamma``
    (all mod 2**64). The finalizer is a bijection, so for a fixed master seed
    distinct indices can never collide.
    """
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index!r}")
    z = (master_seed + (index + 1) * _SPLITMIX_GAMMA) & _U64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _U64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _U64
    return (z ^ (z >> 31)) & _U64


def _delta_bits(delta: float) -> int:
    """IEEE-754 bit pattern of a delta, used as its child-seed index."""
    return struct.unpack("<Q", struct.pack("<d", float(delta)))[0]


@dataclass(frozen=True)
class PhotonTrace:
    """Per-photon record: emission time and the outcome at each splitter."""

    emitted_at: float
    first: OutcomeKind
    path: Path
    second: OutcomeKind | None


@dataclass(frozen=True)
class RunRecord:
    config: ExperimentConfig
    counts: DetectorCounts
    trace: tuple[PhotonTrace, ...] | None = None


@dataclass(frozen=True)
class SweepPoint:
    delta: float
    counts: DetectorCounts
    d1_fraction: float


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    points: tuple[SweepPoint, ...]

    @property
    def deltas(self) -> list[float]:
        return [p.delta for p in self.points]

    @property
    def fractions(self) -> list[float]:
        return [p.d1_fraction for p in self.points]


def _initial_offsets(config: ExperimentConfig, rng: np.random.Generator) -> list[float]:
    n = config.photon_count
    if config.particle_initial_phase is None:
        offsets = rng.uniform(0.0, TWO_PI, n)
        # same boundary snap as wrap_phase, vectorized
        offsets[TWO_PI - offsets < WRAP_SNAP] = 0.0
        return offsets.tolist()
    return [wrap_phase(config.particle_initial_phase)] * n


def _run_stream(
    emissions: list[float],
    phase_offsets: list[float],
    config: ExperimentConfig,
    *,
    mzi: bool,
    want_trace: bool,
) -> tuple[int, int, list[PhotonTrace] | None]:
    """Sequential pass of a photon stream through the apparatus.

    The loop below is the hot path (~1e7 interactions for a full sweep), so
    it inlines the wrap-and-snap arithmetic of :func:`mzsim.phases.wrap_phase`
    on plain floats instead of going through the object-level
    :func:`mzsim.optics.interact`. The two routes are float-for-float
    equivalent; the test suite cross-checks them.
    """
    nu_p = config.particle_frequency
    base = config.base_path_length
    delta = config.delta
    nu1 = config.bs1.frequency
    a1, b1 = config.bs1.update_alpha, config.bs1.update_beta
    nu2 = config.bs2.frequency
    a2, b2 = config.bs2.update_alpha, config.bs2.update_beta
    xi1 = wrap_phase(config.bs1.initial_offset)
    xi2 = wrap_phase(config.bs2.initial_offset)

    two_pi = TWO_PI
    pi = math.pi
    snap = WRAP_SNAP
    reflect = OutcomeKind.REFLECT
    transmit = OutcomeKind.TRANSMIT
    path1 = Path.PATH1
    path2 = Path.PATH2

    d1 = 0
    d2 = 0
    trace: list[PhotonTrace] | None = [] if want_trace else None

    for i in range(len(emissions)):
        t1 = emissions[i] + base
        p = (nu_p * t1 + phase_offsets[i]) % two_pi
        if two_pi - p < snap:
            p = 0.0
        s = (nu1 * t1 + xi1) % two_pi
        if two_pi - s < snap:
            s = 0.0
        diff = (p - s) % two_pi
        if two_pi - diff < snap:
            diff = 0.0
        if diff < pi:
            first = reflect
            p_new = (a1 * p + b1 * s) % two_pi
            if two_pi - p_new < snap:
                p_new = 0.0
            s_new = (a1 * s + b1 * p) % two_pi
            if two_pi - s_new < snap:
                s_new = 0.0
            phi = (p_new - nu_p * t1) % two_pi
            if two_pi - phi < snap:
                phi = 0.0
            xi1 = (s_new - nu1 * t1) % two_pi
            if two_pi - xi1 < snap:
                xi1 = 0.0
            seg = base
            path = path1
        else:
            first = transmit
            phi = phase_offsets[i]
            seg = base + delta
            path = path2

        if not mzi:
            if first is reflect:
                d1 += 1
            else:
                d2 += 1
            if want_trace:
                trace.append(PhotonTrace(emissions[i], first, path, None))
            continue

        t2 = t1 + seg
        p2 = (nu_p * t2 + phi) % two_pi
        if two_pi - p2 < snap:
            p2 = 0.0
        s2 = (nu2 * t2 + xi2) % two_pi
        if two_pi - s2 < snap:
            s2 = 0.0
        diff2 = (p2 - s2) % two_pi
        if two_pi - diff2 < snap:
            diff2 = 0.0
        if diff2 < pi:
            second = reflect
            d1 += 1
            s2_new = (a2 * s2 + b2 * p2) % two_pi
            if two_pi - s2_new < snap:
                s2_new = 0.0
            xi2 = (s2_new - nu2 * t2) % two_pi
            if two_pi - xi2 < snap:
                xi2 = 0.0
        else:
            second = transmit
            d2 += 1
        if want_trace:
            trace.append(PhotonTrace(emissions[i], first, path, second))

    return d1, d2, trace


def _prepare_stream(config: ExperimentConfig) -> tuple[list[float], list[float]]:
    rng = np.random.default_rng(config.master_seed)
    emissions = generate_emissions(
        config.source_rate, config.photon_count, rng, law=config.inter_arrival_law
    )
    return emissions, _initial_offsets(config, rng)


def run_single_bs(config: ExperimentConfig, trace: bool = False) -> RunRecord:
    """Stream all photons against the first splitter only.

    Reflections count to D1, transmissions to D2.
    """
    config.validate()
    emissions, offsets = _prepare_stream(config)
    d1, d2, tr = _run_stream(emissions, offsets, config, mzi=False, want_trace=trace)
    return RunRecord(config, DetectorCounts(d1, d2), tuple(tr) if tr is not None else None)


def run_mzi(config: ExperimentConfig, trace: bool = False) -> RunRecord:
    """Full two-splitter run.

    Each photon travels ``base_path_length`` to BS1; a reflection there sends
    it down path 1 (another ``base_path_length``), a transmission down path 2
    (``base_path_length + delta``); at BS2 a reflection clicks D1 and a
    transmission clicks D2. Both splitters keep their own evolving state for
    the whole stream, so photons are processed strictly in emission order.
    """
    config.validate()
    emissions, offsets = _prepare_stream(config)
    d1, d2, tr = _run_stream(emissions, offsets, config, mzi=True, want_trace=trace)
    return RunRecord(config, DetectorCounts(d1, d2), tuple(tr) if tr is not None else None)


def _sweep_point(config: ExperimentConfig) -> SweepPoint:
    record = run_mzi(config)
    frac = record.counts.d1 / record.counts.total
    return SweepPoint(config.delta, record.counts, frac)


def point_config(config: ExperimentConfig, delta: float) -> ExperimentConfig:
    """Config for one sweep point: its own delta and derived child seed."""
    child = derive_child_seed(config.master_seed, _delta_bits(delta))
    return replace(config, delta=float(delta), master_seed=child)


def run_sweep(
    config: ExperimentConfig,
    deltas: list[float],
    jobs: int = 1,
) -> SweepResult:
    """One :func:`run_mzi` per delta, in input order.

    Each point's seed is a pure function of (master_seed, delta), so the
    result for a given delta does not depend on its position in the list and
    points may be evaluated in parallel (``jobs`` worker processes).
    """
    if not deltas:
        raise ValueError("sweep needs at least one delta")
    config.validate()
    configs = [point_config(config, d) for d in deltas]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(_sweep_point, configs))
    else:
        points = [_sweep_point(c) for c in configs]
    return SweepResult(config, tuple(points))


def default_sweep_deltas(
    config: ExperimentConfig,
    steps: int = 50,
    delta_max: float | None = None,
) -> list[float]:
    """Uniform delta grid; by default two fringe periods in ``steps`` points."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps!r}")
    if delta_max is None:
        delta_max = 2.0 * (TWO_PI / config.particle_frequency)
    if not (math.isfinite(delta_max) and delta_max >= 0.0):
        raise ValueError(f"delta_max must be finite and >= 0, got {delta_max!r}")
    if steps == 1:
        return [0.0]
    return np.linspace(0.0, delta_max, steps).tolist()


def diff_traces(
    a: tuple[PhotonTrace, ...] | list[PhotonTrace],
    b: tuple[PhotonTrace, ...] | list[PhotonTrace],
) -> list[int]:
    """Indices where two per-photon traces disagree (including length excess)."""
    shorter = min(len(a), len(b))
    out = [i for i in range(shorter) if a[i] != b[i]]
    out.extend(range(shorter, max(len(a), len(b))))
    return out
