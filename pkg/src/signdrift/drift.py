"""Drift laws: the discontinuous sign drift and its cubic smoothing."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError


class DriftKind(str, Enum):
    EXACT_SIGN = "sign"
    SMOOTHED_SIGN = "smooth"


@dataclass(frozen=True)
class DriftSpec:
    """Which drift ``b(x)`` is in force.

    ``EXACT_SIGN`` gives ``b(x) = -k sign(x)``; ``SMOOTHED_SIGN`` replaces
    ``sign`` by the cubic spline of sharpness ``N``.
    """

    kind: DriftKind
    k: float
    N: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", DriftKind(self.kind))
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValidationError(f"gain k must be a positive finite number, got {self.k}")
        if self.kind is DriftKind.SMOOTHED_SIGN:
            if self.N is None or int(self.N) != self.N or self.N < 1:
                raise ValidationError(f"smoothed drift needs an integer N >= 1, got {self.N}")
            object.__setattr__(self, "N", int(self.N))
        elif self.N is not None:
            raise ValidationError("N only applies to the smoothed drift")

    @classmethod
    def exact(cls, k: float) -> DriftSpec:
        return cls(DriftKind.EXACT_SIGN, k)

    @classmethod
    def smoothed(cls, k: float, N: int) -> DriftSpec:
        return cls(DriftKind.SMOOTHED_SIGN, k, N)

    def __call__(self, x):
        return drift_value(self, x)


def sign(x):
    """Sign with ``sign(0) == 0``; works on scalars and arrays."""
    out = np.sign(x)
    return float(out) if np.ndim(out) == 0 else out


def smoothed_sign(x, N: int):
    """Odd cubic approximation of ``sign`` that saturates outside ``[-1/N, 1/N]``.

    Inside the interval the value is ``-(N^3/2) x^3 + (3N/2) x``, evaluated in
    nested form ``x * (3N/2 - (N^3/2) x^2)``.
    """
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    xa = np.asarray(x, dtype=float)
    n = float(N)
    cubic = xa * (1.5 * n - 0.5 * n**3 * xa * xa)
    out = np.where(xa > 1.0 / n, 1.0, np.where(xa < -1.0 / n, -1.0, cubic))
    return float(out) if out.ndim == 0 else out


def drift_value(spec: DriftSpec, x):
    """``b(x)``: ``-k sign(x)`` or ``-k f_N(x)`` depending on ``spec.kind``."""
    if spec.kind is DriftKind.EXACT_SIGN:
        return -spec.k * sign(x)
    return -spec.k * smoothed_sign(x, spec.N)
