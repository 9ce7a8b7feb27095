"""Apparatus elements: photon source, beam splitters with persistent phase
state, propagation segments, and detector counters.

A beam splitter here is not a probabilistic 50/50 element: it routes each
photon deterministically by comparing the photon's instantaneous phase with
its own, and a reflection feeds back into the splitter's oscillator, so the
apparatus keeps a record of the photons it reflected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .phases import PhaseOscillator, phase_at, rebase_offset, signed_diff, wrap_phase

INTER_ARRIVAL_LAWS = ("exponential", "uniform", "fixed")


class Path(Enum):
    UNSPLIT = "unsplit"
    PATH1 = "path1"
    PATH2 = "path2"


class OutcomeKind(Enum):
    REFLECT = "reflect"
    TRANSMIT = "transmit"


@dataclass
class Photon:
    """A corpuscular photon: emission time, internal oscillator, route tag."""

    emitted_at: float
    osc: PhaseOscillator
    path: Path = Path.UNSPLIT


@dataclass
class BeamSplitter:
    """Splitter whose oscillator is rewritten by every reflection.

    On reflection both phases are replaced by the linear combinations
    ``p' = alpha*p + beta*s`` and ``s' = alpha*s + beta*p`` (wrapped), where
    p is the photon phase and s the splitter phase at the interaction time.
    ``(alpha, beta) = (1, 0)`` makes the update the identity, which disables
    the splitter's memory entirely.
    """

    osc: PhaseOscillator
    update_alpha: float = 1.0
    update_beta: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.update_alpha) and math.isfinite(self.update_beta)):
            raise ValueError("update coefficients must be finite")


@dataclass(frozen=True)
class InteractionOutcome:
    kind: OutcomeKind
    particle_phase_after: float
    splitter_phase_after: float
    interaction_time: float


@dataclass(frozen=True)
class PathSegment:
    """Propagation path of fixed length, in natural time units (speed = 1)."""

    length: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.length) and self.length >= 0.0):
            raise ValueError(f"segment length must be finite and >= 0, got {self.length!r}")


@dataclass(frozen=True)
class DetectorCounts:
    d1: int
    d2: int

    @property
    def total(self) -> int:
        return self.d1 + self.d2

    @property
    def d1_fraction(self) -> float:
        return self.d1 / self.total


def generate_emissions(
    rate: float,
    n: int,
    rng: np.random.Generator,
    law: str = "exponential",
) -> list[float]:
    """Emission times for ``n`` photons from a source of the given mean rate.

    Gaps between consecutive emissions are i.i.d. draws with mean ``1/rate``:
    exponential by default, or ``uniform`` on [0, 2/rate], or ``fixed`` at
    exactly 1/rate. The returned list is strictly increasing and fully
    determined by ``rng``'s state.
    """
    if not (math.isfinite(rate) and rate > 0.0):
        raise ValueError(f"source rate must be finite and > 0, got {rate!r}")
    if n < 0:
        raise ValueError(f"photon count must be >= 0, got {n!r}")
    if law == "exponential":
        gaps = rng.exponential(1.0 / rate, n)
    elif law == "uniform":
        gaps = rng.uniform(0.0, 2.0 / rate, n)
    elif law == "fixed":
        gaps = np.full(n, 1.0 / rate)
    else:
        raise ValueError(f"unknown inter-arrival law {law!r}")
    return np.cumsum(gaps).tolist()


def decide(diff: float) -> OutcomeKind:
    """Routing rule: reflect iff the wrapped phase difference is below pi."""
    return OutcomeKind.REFLECT if diff < math.pi else OutcomeKind.TRANSMIT


def interact(bs: BeamSplitter, photon: Photon, t: float) -> InteractionOutcome:
    """One instantaneous photon/splitter interaction at time ``t``.

    Transmission changes nothing but the photon's route tag. Reflection
    rewrites both oscillators (rebased at ``t``) with the splitter's update
    coefficients and routes the photon onto path 1.
    """
    if t < photon.emitted_at:
        raise ValueError(
            f"interaction at t={t!r} precedes emission at {photon.emitted_at!r}"
        )
    p = phase_at(photon.osc, t)
    s = phase_at(bs.osc, t)
    kind = decide(signed_diff(p, s))
    if kind is OutcomeKind.TRANSMIT:
        photon.path = Path.PATH2
        return InteractionOutcome(kind, p, s, t)
    alpha, beta = bs.update_alpha, bs.update_beta
    p_new = wrap_phase(alpha * p + beta * s)
    s_new = wrap_phase(alpha * s + beta * p)
    photon.osc = rebase_offset(photon.osc, t, p_new)
    bs.osc = rebase_offset(bs.osc, t, s_new)
    photon.path = Path.PATH1
    return InteractionOutcome(kind, p_new, s_new, t)


def propagate(photon: Photon, segment: PathSegment, depart: float) -> float:
    """Arrival time after traversing ``segment`` (the oscillator free-runs)."""
    return depart + segment.length
