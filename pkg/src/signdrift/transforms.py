"""Numerical check of the Fourier identity for the shifted-and-masked density.

For an even density ``f`` and ``theta = omega * h * k``::

    F[f_z](omega) = cos(theta) Re F[f](omega) - 2 sin(theta) Im L[f](i omega)

where ``F`` is the Fourier transform ``int f(x) exp(-i omega x) dx`` and ``L``
the one-sided Laplace transform ``int_0^inf f(x) exp(-s x) dx``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .density_recursion import shift_and_mask
from .errors import ValidationError
from .grid import DensityGrid

EVEN_TOL = 1e-8


@dataclass(frozen=True)
class TransformSample:
    omega: float
    lhs: complex
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def _check_sampling(f: DensityGrid, omega: float):
    if abs(omega) * f.dx > 0.5:
        warnings.warn(f"omega={omega} is undersampled by dx={f.dx}", RuntimeWarning, stacklevel=3)


def fourier_of_density(f: DensityGrid, omega: float) -> complex:
    """Trapezoidal ``int f(x) exp(-i omega x) dx`` over the grid."""
    _check_sampling(f, omega)
    w = np.full(len(f.values), f.dx)
    w[0] = w[-1] = 0.5 * f.dx
    phase = f.x * omega
    fw = f.values * w
    return complex(math.fsum(fw * np.cos(phase)), -math.fsum(fw * np.sin(phase)))


def laplace_halfline_transform(f: DensityGrid, omega: float) -> complex:
    """Trapezoidal ``int_0^inf f(x) exp(-i omega x) dx`` (node at 0 weighted 1/2)."""
    _check_sampling(f, omega)
    M = f.M
    x = f.x[M:]
    w = np.full(M + 1, f.dx)
    w[0] = w[-1] = 0.5 * f.dx
    fw = f.values[M:] * w
    return complex(math.fsum(fw * np.cos(omega * x)), -math.fsum(fw * np.sin(omega * x)))


def identity_check(f: DensityGrid, h: float, k: float, omegas) -> list[TransformSample]:
    """Evaluate both sides of the identity at each ``omega``.

    ``k = 0`` is accepted (no shift) so the degenerate case can be checked.
    """
    if f.asymmetry() > EVEN_TOL:
        raise ValidationError(f"density is not even (mirror mismatch {f.asymmetry():.3g})")
    g = shift_and_mask(f, h, k)
    out = []
    for omega in omegas:
        theta = omega * h * k
        lhs = fourier_of_density(g, omega)
        rhs = (math.cos(theta) * fourier_of_density(f, omega).real
               - 2.0 * math.sin(theta) * laplace_halfline_transform(f, omega).imag)
        out.append(TransformSample(float(omega), lhs, rhs))
    return out
