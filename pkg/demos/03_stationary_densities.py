"""Closed-form stationary densities for the exact and the smoothed drift.

The smoothed drift replaces sign(x) by a cubic on [-1/N, 1/N]. Its stationary
density has a Gaussian-quartic core and the same exponential tails as the
Laplace density, with constants fixed by normalization.
"""
import math

from signdrift import StationaryDensity, sup_distance

k = 1.0
exact = StationaryDensity.laplace(k)
grid = exact.on_grid(3.0, 1e-3)
print(f"Laplace: phi(0) = {exact(0.0):.4f}, variance = {exact.variance():.4f}")

for N in (1, 10, 100, 1000):
    s = StationaryDensity.smoothed(k, N)
    gap = sup_distance(s.on_grid(3.0, 1e-3), grid)
    mass = s.integral(-math.inf, math.inf)
    print(f"N={N:5d}  phi0={s.phi0:.6f}  d={s.d:.6f}  mass={mass:.12f}  sup gap={gap:.5f}")
