"""Run analysis: mutation deltas, median histories, oscillation fits, coverage.

Everything here is a pure function over run records.  The central series is
H, the per-generation median of arc-length mutation deltas; expansion and
retraction phases are sign runs of a smoothed H, and the damped-cosine fit
quantifies how that oscillation decays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import least_squares

from .spiral import BehaviorPoint, SpiralParams, arc_lengths_from_origin

__all__ = [
    "MutationDeltaRecord",
    "OscillatorFit",
    "PhaseKind",
    "Phase",
    "CoverageReport",
    "CoverageAccumulator",
    "median",
    "mutation_deltas",
    "median_history",
    "fit_damped_oscillator",
    "segment_phases",
    "coverage",
]

MIN_FIT_SAMPLES = 20


@dataclass(frozen=True)
class MutationDeltaRecord:
    generation: int
    deltas: list  # signed arc-length change per offspring, outward positive


@dataclass(frozen=True)
class OscillatorFit:
    """Parameters of A * exp(-decay * g) * cos(frequency * g + phase) + offset."""

    amplitude: float
    decay: float
    frequency: float
    phase: float
    offset: float
    residual: float  # root mean square error over the fitted range

    def predict(self, g) -> np.ndarray:
        g = np.asarray(g, dtype=float)
        return (
            self.amplitude
            * np.exp(-self.decay * g)
            * np.cos(self.frequency * g + self.phase)
            + self.offset
        )


class PhaseKind(Enum):
    EXPANSION = "expansion"
    RETRACTION = "retraction"


class Phase(NamedTuple):
    start: int
    end: int  # inclusive
    kind: PhaseKind


@dataclass
class CoverageReport:
    bins: int
    covered: np.ndarray  # boolean mask, one flag per arc-length bin
    fraction: float


def median(values: Sequence[float]) -> float:
    """Sort-based median, mean of the middle two for even counts, 0.0 if empty."""
    ordered = sorted(values)
    n = len(ordered)
    if n == 0:
        return 0.0
    mid = n // 2
    if n % 2:
        return float(ordered[mid])
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def mutation_deltas(
    lineage_log: Sequence, generation: int, params: SpiralParams
) -> MutationDeltaRecord:
    """Arc-length deltas of every offspring born in the given generation."""
    entries = [e for e in lineage_log if e.generation == generation]
    if not entries:
        raise ValueError(f"no lineage entries for generation {generation}")
    child_arcs = arc_lengths_from_origin(
        np.array([e.child_t for e in entries]), params
    )
    parent_arcs = arc_lengths_from_origin(
        np.array([e.parent_t for e in entries]), params
    )
    return MutationDeltaRecord(generation, list(child_arcs - parent_arcs))


def median_history(delta_records: Sequence[Sequence[float]]) -> list:
    """Per-generation medians of delta collections, in the given order."""
    return [median(deltas) for deltas in delta_records]


def _grid_seed_candidates(y: np.ndarray, n_best: int = 5):
    """Coarse (decay, frequency) grid with a linear solve at each point.

    The model is linear in (P, Q, c) once decay and frequency are fixed:
    exp(-decay*g) * (P*cos + Q*sin) + c.  Normal equations for every grid
    point are batched as matrix products, and the lowest-error points seed
    the non-linear refinement.
    """
    n = len(y)
    g = np.arange(n, dtype=float)
    lams = np.concatenate([[0.0], np.geomspace(0.1 / n, 20.0 / n, 24)])
    omegas = np.geomspace(math.pi / n, math.pi, 240)

    E = np.exp(-np.outer(lams, g))  # (L, n)
    C = np.cos(np.outer(omegas, g))  # (W, n)
    S = np.sin(np.outer(omegas, g))

    E2 = E * E
    uu = E2 @ (C * C).T  # (L, W) entries of the normal matrix
    uv = E2 @ (C * S).T
    vv = E2 @ (S * S).T
    uw = E @ C.T
    vw = E @ S.T
    uy = (E * y) @ C.T
    vy = (E * y) @ S.T
    wy = float(y.sum())
    yy = float(y @ y)

    L, W = uu.shape
    mats = np.empty((L, W, 3, 3))
    mats[..., 0, 0] = uu
    mats[..., 0, 1] = mats[..., 1, 0] = uv
    mats[..., 0, 2] = mats[..., 2, 0] = uw
    mats[..., 1, 1] = vv
    mats[..., 1, 2] = mats[..., 2, 1] = vw
    mats[..., 2, 2] = float(n)
    mats += 1e-12 * np.eye(3)
    rhs = np.stack(
        [uy, vy, np.full_like(uy, wy)], axis=-1
    )  # (L, W, 3)
    beta = np.linalg.solve(mats, rhs[..., None])[..., 0]
    sse = yy - 2.0 * (beta * rhs).sum(-1) + np.einsum(
        "...i,...ij,...j->...", beta, mats, beta
    )

    order = np.argsort(sse, axis=None)[:n_best]
    seeds = []
    for flat in order:
        i, j = divmod(int(flat), W)
        p, q, c = beta[i, j]
        amplitude = math.hypot(p, q)
        phase = math.atan2(-q, p)
        seeds.append((amplitude, lams[i], omegas[j], phase, c))
    return seeds


def fit_damped_oscillator(H: Sequence[float]) -> OscillatorFit:
    """Least-squares fit of a decaying cosine to a median-delta history.

    A coarse grid over decay and frequency (with the remaining parameters
    solved linearly) seeds a bounded non-linear refinement; the candidate
    with the smallest residual wins.
    """
    y = np.asarray(H, dtype=float)
    if len(y) < MIN_FIT_SAMPLES:
        raise ValueError(
            f"need at least {MIN_FIT_SAMPLES} samples to fit, got {len(y)}"
        )
    g = np.arange(len(y), dtype=float)

    def resid(x):
        a, lam, omega, phi, c = x
        return a * np.exp(-lam * g) * np.cos(omega * g + phi) + c - y

    lower = [-np.inf, 0.0, 1e-9, -2.0 * math.pi, -np.inf]
    upper = [np.inf, np.inf, math.pi, 2.0 * math.pi, np.inf]
    best = None
    for seed in _grid_seed_candidates(y):
        x0 = np.clip(np.array(seed), lower, upper)
        sol = least_squares(resid, x0, bounds=(lower, upper))
        if best is None or sol.cost < best.cost:
            best = sol
    a, lam, omega, phi, c = best.x
    rmse = math.sqrt(float(np.mean(resid(best.x) ** 2)))
    return OscillatorFit(float(a), float(lam), float(omega), float(phi), float(c), rmse)


def _moving_median(H: Sequence[float], window: int) -> list:
    half = window // 2
    n = len(H)
    return [median(H[max(0, i - half) : min(n, i + half + 1)]) for i in range(n)]


def segment_phases(H: Sequence[float], window: int = 11) -> list:
    """Sign runs of the smoothed series: positive spans are expansion phases,
    negative spans retraction phases.  Zeros extend whichever phase is open
    (leading zeros join the first phase).  Indices are inclusive.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be a positive odd integer, got {window}")
    smoothed = _moving_median(H, window)
    phases = []
    current: PhaseKind = None
    start = 0
    for i, v in enumerate(smoothed):
        kind = (
            PhaseKind.EXPANSION
            if v > 0
            else PhaseKind.RETRACTION
            if v < 0
            else None
        )
        if kind is None or kind is current:
            continue
        if current is not None:
            phases.append(Phase(start, i - 1, current))
            start = i
        current = kind
    if current is not None:
        phases.append(Phase(start, len(smoothed) - 1, current))
    return phases


def coverage(
    behaviors: Sequence[BehaviorPoint], B: int, params: SpiralParams
) -> CoverageReport:
    """Which of B equal arc-length bins contain at least one behavior."""
    acc = CoverageAccumulator(params, B)
    acc.add_parameters(np.array([b.t for b in behaviors]))
    return acc.report()


class CoverageAccumulator:
    """Incremental coverage over equal arc-length bins of the whole curve."""

    def __init__(self, params: SpiralParams, bins: int = 100):
        if bins < 1:
            raise ValueError(f"bins must be >= 1, got {bins}")
        self.params = params
        self.bins = bins
        self.covered = np.zeros(bins, dtype=bool)

    def add_parameters(self, ts) -> None:
        """Mark the bins hit by behaviors at these curve parameters."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if ts.size == 0:
            return
        arcs = arc_lengths_from_origin(ts, self.params)
        idx = np.floor(self.bins * arcs / self.params.s_max).astype(int)
        np.clip(idx, 0, self.bins - 1, out=idx)
        self.covered[idx] = True

    @property
    def fraction(self) -> float:
        return float(self.covered.sum()) / self.bins

    def report(self) -> CoverageReport:
        return CoverageReport(self.bins, self.covered.copy(), self.fraction)
