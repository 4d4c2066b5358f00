"""Stationary densities of the stationary Fokker-Planck equation.

For the sign drift the two-domain solution is the Laplace density
``k exp(-2k|x|)``. For the cubic-smoothed drift the solution is a quartic
exponential on ``[-1/N, 1/N]`` glued to exponential tails; its constant
``phi0`` needs one quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .drift import sign
from .errors import ValidationError
from .grid import DensityGrid
from .quadrature import DEFAULT_MAX_INTERVALS, adaptive_simpson

DEFAULT_QUAD_TOL = 1e-10
DEFAULT_RESIDUAL_EXCLUDE = 0.1


def laplace_density(x, k: float):
    """``k exp(-2k|x|)``.

    The value ``k`` at the origin is a convention: the stationary equation is
    solved separately on each half-line and says nothing at zero.
    """
    if k <= 0:
        raise ValidationError("k must be positive")
    out = k * np.exp(-2.0 * k * np.abs(np.asarray(x, dtype=float)))
    return float(out) if out.ndim == 0 else out


def _interior_exponent(x, k, N):
    x2 = x * x
    return k * N * x2 * (0.25 * N * N * x2 - 1.5)


def compute_phi0(k: float, N: int, quad_tol: float = DEFAULT_QUAD_TOL,
                 max_intervals: int = DEFAULT_MAX_INTERVALS) -> float:
    """Interior constant of the smoothed stationary density.

    ``phi0 = 1 / (2 * int_0^{1/N} exp(-(3kN/2) x^2 + (kN^3/4) x^4) dx
    + exp(-5k/(4N)) / k)``.
    """
    if k <= 0 or N < 1:
        raise ValidationError("need k > 0 and N >= 1")
    integral = adaptive_simpson(lambda x: math.exp(_interior_exponent(x, k, N)), 0.0, 1.0 / N, quad_tol,
                                max_intervals)
    return 1.0 / (2.0 * integral + math.exp(-1.25 * k / N) / k)


def tail_coefficient(phi0: float, k: float, N: int) -> float:
    return phi0 * math.exp(0.75 * k / N)


def smoothed_density(x, k: float, N: int, phi0: float):
    """Three-piece stationary density for the drift ``-k f_N(x)``."""
    xa = np.asarray(x, dtype=float)
    d = tail_coefficient(phi0, k, N)
    c = 1.0 / N
    inside = np.abs(xa) <= c
    # the interior exponent is only evaluated where it is used
    interior = phi0 * np.exp(_interior_exponent(np.where(inside, xa, 0.0), k, N))
    out = np.where(inside, interior, d * np.exp(-2.0 * k * np.abs(xa)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class StationaryDensity:
    """A closed-form stationary density, callable on arrays."""

    kind: str
    k: float
    N: int | None = None
    phi0: float | None = None
    d: float | None = None
    quad_tol: float = DEFAULT_QUAD_TOL

    @classmethod
    def laplace(cls, k: float) -> StationaryDensity:
        if k <= 0:
            raise ValidationError("k must be positive")
        return cls("laplace", k, d=k)

    @classmethod
    def smoothed(cls, k: float, N: int, quad_tol: float = DEFAULT_QUAD_TOL) -> StationaryDensity:
        phi0 = compute_phi0(k, N, quad_tol)
        return cls("smoothed", k, int(N), phi0, tail_coefficient(phi0, k, N), quad_tol)

    def __call__(self, x):
        if self.kind == "laplace":
            return laplace_density(x, self.k)
        return smoothed_density(x, self.k, self.N, self.phi0)

    @property
    def seam(self) -> float:
        return 0.0 if self.kind == "laplace" else 1.0 / self.N

    def _tail_integral(self, a, b):
        # int_a^b d exp(-2k|x|) dx for a <= b on one side of the origin
        k = self.k
        if b <= 0:
            return self.d / (2 * k) * (math.exp(2 * k * b) - math.exp(2 * k * a))
        return self.d / (2 * k) * (math.exp(-2 * k * a) - math.exp(-2 * k * b))

    def integral(self, a: float, b: float) -> float:
        """``int_a^b`` of the density (``a``, ``b`` may be infinite)."""
        if b < a:
            return -self.integral(b, a)
        c = self.seam
        total = 0.0
        lo, hi = a, min(b, -c)
        if lo < hi:
            total += self._tail_integral(lo, hi)
        lo, hi = max(a, c), b
        if lo < hi:
            total += self._tail_integral(lo, hi)
        lo, hi = max(a, -c), min(b, c)
        if self.kind == "smoothed" and lo < hi:
            total += adaptive_simpson(self, lo, hi, self.quad_tol)
        return total

    def variance(self) -> float:
        k = self.k
        if self.kind == "laplace":
            return 1.0 / (2.0 * k * k)
        c = self.seam
        tail = self.d * math.exp(-2 * k * c) * (c * c / (2 * k) + c / (2 * k * k) + 1 / (4 * k**3))
        inner = adaptive_simpson(lambda x: x * x * self(x), 0.0, c, self.quad_tol)
        return 2.0 * (tail + inner)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "k": self.k, "N": self.N, "phi0": self.phi0, "d": self.d}

    def on_grid(self, L: float, dx: float, mass_tol=None) -> DensityGrid:
        return DensityGrid.from_function(self, L, dx, mass_tol)


def stationary_residual(f: DensityGrid, k: float, exclude: float = DEFAULT_RESIDUAL_EXCLUDE):
    """Central-difference ``k sign(x) f'(x) + f''(x)/2`` away from the origin.

    Returns ``(x, residual)`` for interior nodes with ``|x| >= exclude``.
    """
    v = f.values
    if len(v) < 5:
        raise ValidationError("residual needs at least 5 grid nodes")
    x = f.x[1:-1]
    d1 = (v[2:] - v[:-2]) / (2.0 * f.dx)
    d2 = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / (f.dx * f.dx)
    r = k * sign(x) * d1 + 0.5 * d2
    keep = np.abs(x) >= exclude - 1e-12
    return x[keep], r[keep]
