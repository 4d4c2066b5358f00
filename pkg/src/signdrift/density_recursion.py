"""Grid propagation of the Euler-Maruyama density.

One step maps ``f_n`` to ``f_{n+1} = f_z * N(0, h)``, where ``f_z`` is the
density of ``z = x - hk sign(x)``: each half-line of ``f_n`` is shifted toward
the origin by ``hk`` and the two pieces add up on ``[-hk, hk]``.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import signal, special

from .errors import ValidationError
from .grid import DEFAULT_MASS_TOL, DensityGrid, aligned_steps, grid_nodes

KERNEL_HALF_WIDTH_SIGMAS = 6.0
DEFAULT_STEP_CAP = 10**7
_DIRECT_CONVOLVE_MAX = 64


def default_dx(h: float, k: float) -> float:
    """Spacing with ``hk/dx = 10`` so that shifts land on nodes."""
    return h * k / 10.0


def default_half_span(k: float, dx: float) -> float:
    """``max(6, 14/k)`` rounded up to a multiple of ``dx``.

    At ``|x| = 14/k`` the Laplace tail is ``~e^-28``, so the truncated grid
    leaks less than ``1e-12`` of mass per step.
    """
    L = max(6.0, 14.0 / k)
    return math.ceil(L / dx - 1e-9) * dx


def initial_density(h: float, L: float, dx: float, mass_tol: float | None = DEFAULT_MASS_TOL) -> DensityGrid:
    """``N(0, h)`` sampled on the grid and renormalised to unit mass."""
    if h <= 0:
        raise ValidationError("h must be positive")
    sd = math.sqrt(h)
    if L < KERNEL_HALF_WIDTH_SIGMAS * sd or special.erfc(L / (sd * math.sqrt(2.0))) > 1e-9:
        raise ValidationError(f"grid half-span {L} too narrow for N(0, {h})")
    x = grid_nodes(L, dx)
    values = np.exp(-0.5 * x * x / h)
    values /= dx * math.fsum(values)
    return DensityGrid(L, dx, values, mass_tol)


def shift_and_mask(f: DensityGrid, h: float, k: float) -> DensityGrid:
    """Density of ``z = x - hk sign(x)`` for ``x ~ f``.

    ``g(z) = f(z - hk) 1[z <= hk] + f(z + hk) 1[z >= -hk]``. The node at
    ``x = 0`` sits on both seams; it contributes half its value to each side,
    which keeps ``dx * sum(g) == dx * sum(f)`` exactly.
    """
    if h <= 0 or k < 0:
        raise ValidationError("need h > 0 and k >= 0")
    f.check_mass("input density")
    hk = h * k
    if hk >= f.L:
        raise ValidationError(f"shift hk={hk} must be smaller than the half-span L={f.L}")
    s = aligned_steps(hk, f.dx, "shift hk")
    M = f.M
    v = f.values
    neg = v[: M + 1].copy()
    pos = v[M:].copy()
    neg[-1] *= 0.5
    pos[0] *= 0.5
    g = np.zeros_like(v)
    g[s : M + 1 + s] += neg
    g[M - s : 2 * M + 1 - s] += pos
    return f.replace(g).check_mass("shifted density")


def gaussian_kernel(h: float, dx: float) -> np.ndarray:
    """``N(0, h)`` at ``j*dx`` for ``|j*dx| <= 6 sqrt(h)``, summing to one."""
    m = int(math.floor(KERNEL_HALF_WIDTH_SIGMAS * math.sqrt(h) / dx + 1e-9))
    j = np.arange(-m, m + 1, dtype=float) * dx
    w = np.exp(-0.5 * j * j / h)
    return w / math.fsum(w)


def gaussian_convolve(f: DensityGrid, h: float) -> DensityGrid:
    """Convolve with the truncated, renormalised ``N(0, h)`` kernel."""
    if h <= 0:
        raise ValidationError("h must be positive")
    w = gaussian_kernel(h, f.dx)
    if len(w) > len(f.values):
        raise ValidationError(f"N(0, {h}) kernel is wider than the grid")
    if len(w) <= _DIRECT_CONVOLVE_MAX:
        g = np.convolve(f.values, w, mode="same")
    else:
        g = signal.fftconvolve(f.values, w, mode="same")
    return f.replace(np.maximum(g, 0.0)).check_mass("convolved density")


def recursion_step(f: DensityGrid, h: float, k: float) -> DensityGrid:
    """``f_{n+1} = shift_and_mask(f_n) * N(0, h)``."""
    return gaussian_convolve(shift_and_mask(f, h, k), h)


def schedule_steps(h: float, alpha: float, cap: int = DEFAULT_STEP_CAP) -> int:
    """Number of recursion steps ``ceil(h^-(1 + alpha))``."""
    if not 0 < h < 1:
        raise ValidationError(f"need 0 < h < 1, got {h}")
    if alpha < 0:
        raise ValidationError("alpha must be nonnegative")
    r = h ** -(1.0 + alpha)
    nearest = round(r)
    n = int(nearest) if abs(r - nearest) <= 1e-9 * r else math.ceil(r)
    if n > cap:
        raise ValidationError(f"schedule of {n} steps exceeds the cap {cap}")
    return n


def evolve(h: float, k: float, alpha: float, snapshots, L: float | None = None,
           dx: float | None = None, mass_tol: float | None = DEFAULT_MASS_TOL,
           cap: int = DEFAULT_STEP_CAP) -> list[tuple[int, DensityGrid]]:
    """Iterate the recursion from ``N(0, h)`` and return the requested snapshots.

    Snapshot indices must lie in ``0..schedule_steps(h, alpha)``; the result
    is sorted by index, duplicates removed.
    """
    n_total = schedule_steps(h, alpha, cap)
    wanted = sorted({int(i) for i in snapshots})
    if not wanted:
        raise ValidationError("no snapshots requested")
    if wanted[0] < 0 or wanted[-1] > n_total:
        raise ValidationError(f"snapshot indices must lie in 0..{n_total}")
    if dx is None:
        if k <= 0:
            raise ValidationError("dx must be given when k = 0")
        dx = default_dx(h, k)
    if L is None:
        L = default_half_span(k, dx) if k > 0 else 6.0
    f = initial_density(h, L, dx, mass_tol)
    out = []
    for n in range(wanted[-1] + 1):
        if n > 0:
            f = recursion_step(f, h, k)
        if n == wanted[len(out)]:
            out.append((n, f))
    return out
