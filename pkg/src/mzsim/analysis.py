"""Statistics over detector counts: binomial intervals, fringe visibility,
sinusoid fitting, and the ideal interferometer reference curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import TYPE_CHECKING

import numpy as np

from .phases import TWO_PI, wrap_phase

if TYPE_CHECKING:
    from .experiment import SweepResult

_FREQ_SCAN_POINTS = 512
_GN_MAX_ITER = 100
_GN_MAX_HALVINGS = 25


@dataclass(frozen=True)
class IntervalEstimate:
    point: float
    lo: float
    hi: float
    confidence: float


def binomial_ci(successes: int, trials: int, confidence: float = 0.95) -> IntervalEstimate:
    """Normal-approximation confidence interval for a binomial proportion.

    ``point +- z * sqrt(p*(1-p)/n)``, clamped to [0, 1].
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes must be in [0, trials], got {successes!r}/{trials!r}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence!r}")
    p = successes / trials
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    half = z * math.sqrt(p * (1.0 - p) / trials)
    return IntervalEstimate(p, max(0.0, p - half), min(1.0, p + half), confidence)


def visibility(fractions: list[float]) -> float:
    """Fringe contrast (max - min) / (max + min); 0 for an all-zero input."""
    if not len(fractions):
        raise ValueError("visibility needs at least one fraction")
    hi = max(fractions)
    lo = min(fractions)
    if hi + lo == 0.0:
        return 0.0
    return (hi - lo) / (hi + lo)


@dataclass(frozen=True)
class SineFit:
    """Least-squares parameters of ``offset + amplitude*sin(w*x + phase)``."""

    amplitude: float
    angular_frequency: float
    phase: float
    offset: float
    r_squared: float
    converged: bool = True

    def value_at(self, x: float) -> float:
        return self.offset + self.amplitude * math.sin(self.angular_frequency * x + self.phase)


def _scan_frequency(x: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    """Pick the best frequency from a fixed grid by linear projection.

    For each candidate w the model ``c0 + a*sin(wx) + b*cos(wx)`` is linear;
    the candidate with the smallest residual seeds the nonlinear refinement.
    The grid spans [0.1, 10] times the fundamental 2*pi/span.
    """
    span = float(x.max() - x.min())
    base = TWO_PI / span
    best_sse = math.inf
    best: tuple[float, np.ndarray] | None = None
    ones = np.ones_like(x)
    for w in np.linspace(0.1 * base, 10.0 * base, _FREQ_SCAN_POINTS):
        design = np.column_stack([ones, np.sin(w * x), np.cos(w * x)])
        coef, *_ = np.linalg.lstsq(design, y, rcond=None)
        resid = y - design @ coef
        sse = float(resid @ resid)
        if sse < best_sse:
            best_sse = sse
            best = (float(w), coef)
    assert best is not None
    return best


def fit_sine(points: "list[tuple[float, float]] | np.ndarray") -> SineFit:
    """Fit ``offset + amplitude*sin(w*delta + phase)`` by damped Gauss-Newton.

    The frequency is initialised from a discrete scan of candidate
    frequencies (see :func:`_scan_frequency`), then all four parameters are
    refined with Gauss-Newton steps, halving the step whenever it fails to
    reduce the residual. If the iteration cap is reached the best parameters
    found are returned with ``converged=False``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be a sequence of (delta, fraction) pairs")
    if pts.shape[0] < 8:
        raise ValueError(f"need at least 8 points to fit, got {pts.shape[0]}")
    x = pts[:, 0]
    y = pts[:, 1]
    if np.unique(x).size < 2:
        raise ValueError("need at least 2 distinct deltas to fit")

    w, coef = _scan_frequency(x, y)
    c0, a, b = (float(v) for v in coef)

    def sse_of(c0: float, a: float, b: float, w: float) -> tuple[float, np.ndarray]:
        resid = y - (c0 + a * np.sin(w * x) + b * np.cos(w * x))
        return float(resid @ resid), resid

    sse, resid = sse_of(c0, a, b, w)
    converged = False
    for _ in range(_GN_MAX_ITER):
        sin_wx = np.sin(w * x)
        cos_wx = np.cos(w * x)
        jac = np.column_stack(
            [np.ones_like(x), sin_wx, cos_wx, x * (a * cos_wx - b * sin_wx)]
        )
        step, *_ = np.linalg.lstsq(jac, resid, rcond=None)
        scale = 1.0
        improved = False
        for _ in range(_GN_MAX_HALVINGS):
            trial = (c0 + scale * step[0], a + scale * step[1],
                     b + scale * step[2], w + scale * step[3])
            trial_sse, trial_resid = sse_of(*trial)
            if trial_sse <= sse:
                improved = trial_sse < sse - 1e-15 * max(sse, 1.0)
                c0, a, b, w = trial
                sse, resid = trial_sse, trial_resid
                break
            scale *= 0.5
        if not improved:
            converged = True
            break

    if w < 0.0:
        w, a = -w, -a
    amplitude = math.hypot(a, b)
    phase = wrap_phase(math.atan2(b, a)) if amplitude > 0.0 else 0.0
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot > 0.0:
        r_squared = 1.0 - sse / ss_tot
    else:
        r_squared = 1.0 if sse <= 1e-18 else -math.inf
    return SineFit(amplitude, w, phase, c0, r_squared, converged)


def qm_reference(delta: float, nu: float) -> float:
    """Ideal one-output interferometer probability cos^2(nu*delta/2)."""
    return math.cos(0.5 * nu * delta) ** 2


@dataclass(frozen=True)
class QmComparison:
    """Side-by-side of a simulated sweep and the ideal reference curve.

    The simulated model is expected to sit well below the ideal visibility
    of 1.0; the gap is a property of the model, not a defect of the run.
    """

    residuals: tuple[float, ...]
    model_visibility: float
    ideal_visibility: float
    visibility_gap: float
    fit: SineFit | None
    fitted_period: float | None
    ideal_period: float


def compare_to_qm(sweep: SweepResult, nu: float) -> QmComparison:
    """Compare a :class:`~mzsim.experiment.SweepResult` against the ideal curve.

    Residuals are fraction - cos^2(nu*delta/2) per point. When the sweep has
    enough points the fitted fringe period is reported next to the ideal
    2*pi/nu.
    """
    deltas = sweep.deltas
    fractions = sweep.fractions
    residuals = tuple(f - qm_reference(d, nu) for d, f in zip(deltas, fractions))
    model_vis = visibility(fractions)
    fit = None
    fitted_period = None
    if len(deltas) >= 8 and len(set(deltas)) >= 2:
        fit = fit_sine(list(zip(deltas, fractions)))
        if fit.angular_frequency > 0.0:
            fitted_period = TWO_PI / fit.angular_frequency
    return QmComparison(
        residuals=residuals,
        model_visibility=model_vis,
        ideal_visibility=1.0,
        visibility_gap=1.0 - model_vis,
        fit=fit,
        fitted_period=fitted_period,
        ideal_period=TWO_PI / nu,
    )
