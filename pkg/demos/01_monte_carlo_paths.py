"""Simulate an ensemble of sign-drift paths and look at where they end up.

Every path starts at zero and is pulled back toward it with speed k. After a
unit of time the histogram of x_T already has the peaked Laplace shape, though
it has not yet spread to the stationary variance 1/(2k^2).
"""
import numpy as np

from signdrift import DriftSpec, RunConfig, StationaryDensity, histogram_vs_density, simulate_ensemble
from signdrift.em_simulator import mean_path, terminal_histogram

cfg = RunConfig(DriftSpec.exact(1.0), h=0.001, T=1.0, paths=2000, seed=7)
ens = simulate_ensemble(cfg)

print(f"{cfg.paths} paths, {cfg.n_steps} steps of h={cfg.h}")
print(f"largest |mean path| over time: {np.max(np.abs(mean_path(ens))):.4f}")
print(f"average zero crossings per path: {ens.zero_crossings.mean():.1f}")

hist = terminal_histogram(ens, bins=40)
cmp = histogram_vs_density(hist, StationaryDensity.laplace(1.0), ens.terminal)
print(f"terminal variance {cmp.variance_sample:.3f}, stationary value {cmp.variance_ref:.3f}")
print(f"L1 gap between histogram and Laplace density: {cmp.l1:.3f}")

# Running longer lets the ensemble relax.
long = simulate_ensemble(RunConfig(DriftSpec.exact(1.0), h=0.005, T=8.0, paths=2000, seed=7), keep_paths=False)
print(f"after T=8 the variance is {long.terminal.var(ddof=1):.3f}")
