"""Distances and summary statistics comparing the three density routes."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .em_simulator import Histogram, RunConfig, simulate_ensemble
from .errors import ValidationError
from .fokker_planck import StationaryDensity
from .grid import DensityGrid

LOG_FLOOR = 1e-12


def _window_mask(a: DensityGrid, b: DensityGrid, window) -> np.ndarray:
    if not a.same_geometry(b):
        raise ValidationError("densities live on different grids")
    lo, hi = window
    x = a.x
    mask = (x >= lo - 1e-12) & (x <= hi + 1e-12)
    if not mask.any():
        raise ValidationError(f"window {window} contains no grid nodes")
    return mask


def sup_distance(a: DensityGrid, b: DensityGrid, window=(-np.inf, np.inf)) -> float:
    mask = _window_mask(a, b, window)
    return float(np.max(np.abs(a.values[mask] - b.values[mask])))


def log_density_distance(a: DensityGrid, b: DensityGrid, window=(-np.inf, np.inf),
                         floor: float = LOG_FLOOR) -> float:
    """``sup |log a - log b|`` over the window, values clipped below at ``floor``."""
    mask = _window_mask(a, b, window)
    la = np.log(np.maximum(a.values[mask], floor))
    lb = np.log(np.maximum(b.values[mask], floor))
    return float(np.max(np.abs(la - lb)))


@dataclass(frozen=True)
class HistogramComparison:
    l1: float
    sup: float
    variance_sample: float
    variance_ref: float

    def to_dict(self) -> dict:
        return asdict(self)


def histogram_vs_density(hist: Histogram, ref: StationaryDensity, samples=None) -> HistogramComparison:
    """Compare histogram densities with bin averages of ``ref``.

    ``variance_sample`` uses the raw samples when given, otherwise the binned
    counts (bin centres).
    """
    if hist.counts.sum() == 0:
        raise ValidationError("histogram has no samples in range")
    widths = hist.widths
    ref_avg = np.array([ref.integral(a, b) for a, b in zip(hist.edges[:-1], hist.edges[1:])]) / widths
    diff = np.abs(hist.density - ref_avg)
    if samples is not None:
        var = float(np.var(np.asarray(samples, dtype=float), ddof=1))
    else:
        c = hist.centers
        p = hist.counts / hist.counts.sum()
        var = float(np.sum(p * c * c) - np.sum(p * c) ** 2)
    return HistogramComparison(float(np.sum(diff * widths)), float(diff.max()), var, ref.variance())


def sweep_seed(base_seed: int, index: int) -> int:
    """Deterministic per-member seed for sweeps sharing one base seed."""
    ss = np.random.SeedSequence(int(base_seed), spawn_key=(0x5EED, int(index)))
    return int(ss.generate_state(1, np.uint64)[0])


def terminal_variance(config: RunConfig) -> float:
    ens = simulate_ensemble(config, keep_paths=False)
    return float(np.var(ens.terminal, ddof=1))


def variance_sweep(k_values, base: RunConfig) -> list[tuple[float, float]]:
    """Terminal sample variance for each gain, drift kind and other settings from ``base``."""
    k_values = list(k_values)
    if not k_values:
        raise ValidationError("k_values is empty")
    out = []
    for i, k in enumerate(k_values):
        if k <= 0:
            raise ValidationError(f"gain must be positive, got {k}")
        cfg = replace(base, drift=replace(base.drift, k=float(k)), seed=sweep_seed(base.seed, i))
        out.append((float(k), terminal_variance(cfg)))
    return out
