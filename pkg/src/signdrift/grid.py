"""Uniform symmetric grids carrying sampled probability densities."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MassInvariantError, ValidationError

DEFAULT_MASS_TOL = 1e-6


def node_count(L: float, dx: float) -> int:
    """Half-grid node count ``M = L/dx``; raises unless the ratio is integral."""
    if not (dx > 0 and L > 0 and math.isfinite(L) and math.isfinite(dx)):
        raise ValidationError(f"need positive finite L and dx, got L={L}, dx={dx}")
    r = L / dx
    M = round(r)
    if M < 1 or abs(r - M) > 1e-9 * max(r, 1.0):
        raise ValidationError(f"L/dx must be a positive integer, got {r}")
    return int(M)


def aligned_steps(length: float, dx: float, what: str = "shift") -> int:
    """Integer number of grid spacings in ``length``; rejects misalignment."""
    r = length / dx
    n = round(r)
    if abs(r - n) > 1e-9 * max(abs(r), 1.0):
        raise ValidationError(f"{what} {length} is not an integer multiple of dx={dx}")
    return int(n)


@dataclass(frozen=True, eq=False)
class DensityGrid:
    """Density values at nodes ``x_i = i*dx``, ``i = -M..M``, ``M = L/dx``.

    ``mass_tol`` is the tolerance that operations producing a density check
    ``dx * sum(values)`` against; ``None`` switches the check off (useful for
    tiny test grids that are expected to leak).
    """

    L: float
    dx: float
    values: np.ndarray
    mass_tol: float | None = DEFAULT_MASS_TOL

    def __post_init__(self):
        M = node_count(self.L, self.dx)
        values = np.array(self.values, dtype=float)
        if values.shape != (2 * M + 1,):
            raise ValidationError(f"expected {2 * M + 1} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("density values must be finite")
        if np.any(values < 0):
            raise ValidationError("density values must be nonnegative")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, fn, L: float, dx: float, mass_tol: float | None = DEFAULT_MASS_TOL,
                      normalize: bool = False) -> DensityGrid:
        x = grid_nodes(L, dx)
        values = np.asarray(fn(x), dtype=float)
        if normalize:
            values = values / (dx * values.sum())
        return cls(L, dx, values, mass_tol)

    @property
    def M(self) -> int:
        return (len(self.values) - 1) // 2

    @property
    def x(self) -> np.ndarray:
        return grid_nodes(self.L, self.dx)

    def mass(self) -> float:
        return float(self.dx * math.fsum(self.values))

    def replace(self, values) -> DensityGrid:
        return DensityGrid(self.L, self.dx, values, self.mass_tol)

    def check_mass(self, what: str = "density") -> DensityGrid:
        if self.mass_tol is not None:
            m = self.mass()
            if abs(m - 1.0) > self.mass_tol:
                raise MassInvariantError(f"{what} has mass {m!r}, off by more than {self.mass_tol}")
        return self

    def asymmetry(self) -> float:
        """Largest difference between mirrored nodes."""
        return float(np.max(np.abs(self.values - self.values[::-1])))

    def index_of(self, x: float) -> int:
        i = round(x / self.dx) + self.M
        if not 0 <= i < len(self.values):
            raise ValidationError(f"x={x} lies outside the grid")
        return int(i)

    def same_geometry(self, other: DensityGrid) -> bool:
        return len(self.values) == len(other.values) and math.isclose(self.dx, other.dx, rel_tol=1e-12)


def grid_nodes(L: float, dx: float) -> np.ndarray:
    M = node_count(L, dx)
    return dx * np.arange(-M, M + 1, dtype=float)
