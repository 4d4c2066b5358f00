"""The one-step operator ``H_h`` and its finite-``h`` generator estimate.

Away from the origin ``(H_h[f] - f) / h`` tends to
``G[f] = k sign(x) f'(x) + f''(x) / 2`` as ``h -> 0``.
"""
from __future__ import annotations

import numpy as np

from .density_recursion import recursion_step
from .errors import ValidationError
from .grid import DensityGrid


def apply_Hh(f: DensityGrid, h: float, k: float) -> DensityGrid:
    """One recursion step; ``H_h`` is ``recursion_step`` under another name."""
    return recursion_step(f, h, k)


def generator_estimate(f: DensityGrid, h: float, k: float) -> np.ndarray:
    """``(H_h[f](x_i) - f(x_i)) / h`` at every node."""
    return (apply_Hh(f, h, k).values - f.values) / h


def generator_limit_reference(df, d2f, k: float, x):
    """``k sign(x) f'(x) + f''(x)/2`` from analytic derivatives; undefined at 0."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa == 0):
        raise ValidationError("the limit generator is unspecified at x = 0")
    out = k * np.sign(xa) * df(xa) + 0.5 * d2f(xa)
    return float(out) if out.ndim == 0 else out


def gaussian_test_density(var: float = 1.0):
    """``(pdf, d/dx pdf, d^2/dx^2 pdf)`` of ``N(0, var)``."""
    c = 1.0 / np.sqrt(2.0 * np.pi * var)

    def g(x):
        return c * np.exp(-0.5 * x * x / var)

    def dg(x):
        return -x / var * g(x)

    def d2g(x):
        return (x * x / var - 1.0) / var * g(x)

    return g, dg, d2g


def laplace_test_density(k: float):
    """``(pdf, pdf', pdf'')`` of ``k exp(-2k|x|)`` for ``x != 0``."""

    def f(x):
        return k * np.exp(-2.0 * k * np.abs(x))

    def df(x):
        return -2.0 * k * np.sign(x) * f(x)

    def d2f(x):
        return 4.0 * k * k * f(x)

    return f, df, d2f
