"""Seeded Euler-Maruyama ensembles for ``dx = b(x) dt + dB``.

Every path draws its Wiener increments from its own generator, seeded from
``SeedSequence(seed, spawn_key=(p,))``. A path's values therefore depend only
on ``(seed, p)`` and never on block size or the order paths are computed in.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .drift import DriftSpec, drift_value
from .errors import ValidationError

DEFAULT_WORK_BUDGET = 10**9
DEFAULT_STORE_BUDGET = 25_000_000
DEFAULT_BINS = 50
DEFAULT_HIST_HALF_RANGE = 5.0
_BLOCK = 1024


@dataclass(frozen=True)
class RunConfig:
    drift: DriftSpec
    h: float
    T: float = 1.0
    paths: int = 500
    x0: float = 0.0
    seed: int = 0
    alpha: float = 0.5
    work_budget: int = DEFAULT_WORK_BUDGET

    def __post_init__(self):
        for name in ("h", "T", "x0", "alpha"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if not 0 < self.h <= self.T:
            raise ValidationError(f"need 0 < h <= T, got h={self.h}, T={self.T}")
        if self.alpha < 0:
            raise ValidationError("alpha must be nonnegative")
        if int(self.paths) != self.paths or self.paths < 1:
            raise ValidationError(f"paths must be a positive integer, got {self.paths}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValidationError("seed must fit in an unsigned 64-bit integer")
        if self.paths * self.n_steps > self.work_budget:
            raise ValidationError(
                f"paths * steps = {self.paths * self.n_steps} exceeds the work budget {self.work_budget}"
            )

    @property
    def n_steps(self) -> int:
        return step_count(self.T, self.h)

    def step_lengths(self) -> np.ndarray:
        n = self.n_steps
        steps = np.full(n, float(self.h))
        last = self.T - (n - 1) * self.h
        if not math.isclose(last, self.h, rel_tol=1e-9):
            steps[-1] = last
        return steps

    def times(self) -> np.ndarray:
        t = np.concatenate([[0.0], np.cumsum(self.step_lengths())])
        t[-1] = self.T
        return t

    def to_dict(self) -> dict:
        return {
            "drift": self.drift.kind.value,
            "k": self.drift.k,
            "N": self.drift.N,
            "h": self.h,
            "T": self.T,
            "paths": self.paths,
            "x0": self.x0,
            "seed": int(self.seed),
            "alpha": self.alpha,
            "n_steps": self.n_steps,
        }


def step_count(T: float, h: float) -> int:
    """``ceil(T/h)``, forgiving the roundoff in ratios like ``1.1/0.1``."""
    r = T / h
    nearest = round(r)
    if nearest >= 1 and abs(r - nearest) <= 1e-9 * r:
        return int(nearest)
    return max(1, math.ceil(r))


@dataclass(frozen=True)
class TrajectoryEnsemble:
    """Simulated paths.

    ``values`` has shape ``(paths, n_steps + 1)`` or is ``None`` when the run
    was too large to keep whole paths; ``terminal`` is always present.
    """

    config: RunConfig
    times: np.ndarray
    values: np.ndarray | None
    terminal: np.ndarray
    zero_crossings: np.ndarray

    @property
    def paths(self) -> int:
        return len(self.terminal)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    samples: int = field(default=0)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])


def em_step(x, drift: DriftSpec, h: float, w):
    """One Euler-Maruyama step ``x + h b(x) + w``."""
    return x + h * drift_value(drift, x) + w


def smoothed_step_size(N: int, base: float = 0.001) -> float:
    """Step length ``base / N`` used with the sharpness-``N`` drift."""
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    return base / N


def path_generator(seed: int, p: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(p),))))


def wiener_increments(config: RunConfig, path_ids) -> np.ndarray:
    """Increments ``W_n ~ N(0, h_n)`` for the requested paths, one row each."""
    scale = np.sqrt(config.step_lengths())
    out = np.empty((len(path_ids), config.n_steps))
    for row, p in enumerate(path_ids):
        out[row] = path_generator(config.seed, p).standard_normal(config.n_steps)
    out *= scale
    return out


def simulate_paths(x0, drift: DriftSpec, steps, increments, keep_paths=True):
    """Run the recursion on given increments.

    ``increments`` has shape ``(paths, n_steps)``. Returns ``(values, terminal,
    zero_crossings)``; ``values`` is ``None`` unless ``keep_paths``.
    """
    increments = np.atleast_2d(np.asarray(increments, dtype=float))
    steps = np.broadcast_to(np.asarray(steps, dtype=float), increments.shape[1:])
    n_paths, n = increments.shape
    x = np.full(n_paths, float(x0))
    crossings = np.zeros(n_paths, dtype=np.int64)
    values = np.empty((n_paths, n + 1)) if keep_paths else None
    if keep_paths:
        values[:, 0] = x
    for i in range(n):
        x_next = em_step(x, drift, steps[i], increments[:, i])
        crossings += (x * x_next < 0) | ((x != 0) & (x_next == 0))
        x = x_next
        if keep_paths:
            values[:, i + 1] = x
    return values, x, crossings


def simulate_ensemble(config: RunConfig, keep_paths: bool | None = None,
                      store_budget: int = DEFAULT_STORE_BUDGET) -> TrajectoryEnsemble:
    """Simulate ``config.paths`` independent paths on ``[0, T]``.

    Whole paths are kept when ``paths * (n_steps + 1) <= store_budget`` (or
    when forced with ``keep_paths``); otherwise only terminal values are.
    """
    n = config.n_steps
    if keep_paths is None:
        keep_paths = config.paths * (n + 1) <= store_budget
    steps = config.step_lengths()
    values = np.empty((config.paths, n + 1)) if keep_paths else None
    terminal = np.empty(config.paths)
    crossings = np.empty(config.paths, dtype=np.int64)
    for start in range(0, config.paths, _BLOCK):
        ids = range(start, min(start + _BLOCK, config.paths))
        dw = wiener_increments(config, ids)
        v, xt, zc = simulate_paths(config.x0, config.drift, steps, dw, keep_paths)
        block = slice(ids.start, ids.stop)
        if keep_paths:
            values[block] = v
        terminal[block] = xt
        crossings[block] = zc
    return TrajectoryEnsemble(config, config.times(), values, terminal, crossings)


def mean_path(ensemble: TrajectoryEnsemble) -> np.ndarray:
    """Cross-path mean at every time index."""
    if ensemble.values is None:
        raise ValidationError("ensemble was run without keeping whole paths")
    return ensemble.values.mean(axis=0)


def histogram(samples, bins: int = DEFAULT_BINS, range: tuple[float, float] | None = None) -> Histogram:
    """Histogram whose ``density`` integrates to the fraction of samples in range."""
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size == 0:
        raise ValidationError("cannot histogram an empty sample")
    if bins < 1:
        raise ValidationError("bins must be >= 1")
    if range is None:
        if np.ptp(samples) == 0.0:
            range = (samples[0] - 0.5, samples[0] + 0.5)
        else:
            half = min(float(np.max(np.abs(samples))), DEFAULT_HIST_HALF_RANGE)
            range = (-half, half)
    lo, hi = map(float, range)
    if not lo < hi:
        raise ValidationError(f"histogram range must satisfy lo < hi, got {range}")
    counts, edges = np.histogram(samples, bins=bins, range=(lo, hi))
    density = counts / (samples.size * np.diff(edges))
    return Histogram(edges, counts, density, samples.size)


def terminal_histogram(ensemble: TrajectoryEnsemble, bins: int = DEFAULT_BINS,
                       range: tuple[float, float] | None = None) -> Histogram:
    """Histogram of ``x_T``; default range is symmetric, clipped to ``[-5, 5]``."""
    if ensemble.paths == 0:
        raise ValidationError("empty ensemble")
    return histogram(ensemble.terminal, bins, range)
