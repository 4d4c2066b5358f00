"""Adaptive Simpson quadrature with interval halving."""
from __future__ import annotations

from .errors import QuadratureError

DEFAULT_MAX_INTERVALS = 200_000


def _simpson(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(fn, a: float, b: float, tol: float = 1e-10,
                     max_intervals: int = DEFAULT_MAX_INTERVALS, min_width: float = 0.0) -> float:
    """Integrate a scalar function over ``[a, b]`` to absolute error ``tol``.

    A panel is accepted when its two halves agree with the whole to within
    ``15 * tol_panel`` (the usual Richardson bound); the panel tolerance is
    halved along with the panel. Raises ``QuadratureError`` when more than
    ``max_intervals`` panels are examined.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(fn, b, a, tol, max_intervals, min_width)
    m = 0.5 * (a + b)
    fa, fm, fb = fn(a), fn(m), fn(b)
    stack = [(a, b, fa, fm, fb, _simpson(fa, fm, fb, a, b), tol)]
    total = 0.0
    correction = 0.0
    seen = 0
    while stack:
        a, b, fa, fm, fb, whole, eps = stack.pop()
        seen += 1
        if seen > max_intervals:
            raise QuadratureError(f"adaptive Simpson did not reach tol={tol} within {max_intervals} panels")
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = fn(lm), fn(rm)
        left = _simpson(fa, flm, fm, a, m)
        right = _simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps or (b - a) <= min_width:
            # Kahan-style compensated sum over accepted panels
            y = left + right + delta / 15.0 - correction
            t = total + y
            correction = (t - total) - y
            total = t
        else:
            stack.append((m, b, fm, frm, fb, right, 0.5 * eps))
            stack.append((a, m, fa, flm, fm, left, 0.5 * eps))
    return total
