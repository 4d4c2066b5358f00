"""Acceptance criteria, one pass/fail line each (see the summary section of the pytest run)."""
import math
import time

import numpy as np
import pytest

from signdrift.analysis import log_density_distance, sup_distance, variance_sweep
from signdrift.cli import run
from signdrift.density_recursion import evolve, recursion_step
from signdrift.drift import DriftSpec
from signdrift.em_simulator import RunConfig, simulate_ensemble
from signdrift.fokker_planck import StationaryDensity, compute_phi0, laplace_density, stationary_residual
from signdrift.generator import (
    gaussian_test_density,
    generator_estimate,
    generator_limit_reference,
    laplace_test_density,
)
from signdrift.grid import DensityGrid
from signdrift.transforms import fourier_of_density, identity_check

from .oracles import recursion_loops
from .test_transforms import continuum_fz_transform

# Calibrated once from the default-grid run (D(1000) = 0.116426...) and frozen.
FINAL_LOG_DISTANCE_MAX = 0.12


def strictly_decreasing(seq):
    return all(a > b for a, b in zip(seq, seq[1:]))


def fmt(seq):
    return "[" + ", ".join(f"{v:.4g}" for v in seq) + "]"


def test_laplace_stationarity(report):
    t0 = time.perf_counter()
    res = []
    for dx in (1e-3, 5e-4):
        f = StationaryDensity.laplace(1.0).on_grid(3.5, dx)
        x, r = stationary_residual(f, 1.0, exclude=0.1)
        res.append(np.max(np.abs(r[np.abs(x) <= 3 + 1e-12])))
    elapsed = time.perf_counter() - t0
    ok = res[0] <= 1e-4 and res[0] / res[1] >= 3.5 and elapsed < 1
    report("1 laplace stationarity", ok,
           f"max|r| {res[0]:.3g} -> {res[1]:.3g} (ratio {res[0] / res[1]:.2f}), {elapsed:.2f}s")
    assert ok


def test_laplace_normalization_and_variance(report):
    t0 = time.perf_counter()
    dx = 1e-4
    x = dx * np.arange(-100_000, 100_001)
    worst_mass, worst_var = 0.0, 0.0
    for k in (1.0, 2.0, 3.0, 4.0):
        phi = laplace_density(x, k)
        mass = np.trapezoid(phi, x)
        second = np.trapezoid(x * x * phi, x)
        worst_mass = max(worst_mass, abs(mass - 1))
        worst_var = max(worst_var, abs(second * 2 * k * k - 1))
    elapsed = time.perf_counter() - t0
    ok = worst_mass <= 1e-6 and worst_var <= 1e-4 and elapsed < 1
    report("2 laplace mass/variance", ok,
           f"max|mass-1| {worst_mass:.2g}, max rel var err {worst_var:.2g}, {elapsed:.2f}s")
    assert ok


@pytest.mark.slow
def test_recursion_approaches_laplace(report):
    t0 = time.perf_counter()
    snaps = evolve(0.01, 1.0, 0.5, [158, 398, 1000])
    ref = StationaryDensity.laplace(1.0).on_grid(snaps[0][1].L, snaps[0][1].dx)
    dist = [log_density_distance(f, ref, (-2, 2)) for _, f in snaps]
    mass_err = max(abs(f.mass() - 1) for _, f in snaps)
    elapsed = time.perf_counter() - t0
    decreasing = strictly_decreasing(dist)
    ok = decreasing and mass_err <= 1e-6 and dist[-1] <= FINAL_LOG_DISTANCE_MAX and elapsed < 300
    report("3 recursion -> laplace", ok,
           f"log sup distance {fmt(dist)} (strictly decreasing: {decreasing}), "
           f"max|mass-1| {mass_err:.2g}, final <= {FINAL_LOG_DISTANCE_MAX}: {dist[-1] <= FINAL_LOG_DISTANCE_MAX}, "
           f"{elapsed:.1f}s")
    assert ok


def test_small_grid_oracle(report):
    t0 = time.perf_counter()
    L, dx, h, k = 1.0, 0.2, 0.01, 20.0
    x = dx * np.arange(-5, 6)
    f = DensityGrid(L, dx, np.exp(-((x - 0.2) ** 2)), mass_tol=None)
    g = f
    for _ in range(3):
        g = recursion_step(g, h, k)
    err = np.max(np.abs(g.values - recursion_loops(f.values, dx, h, k, 3)))
    elapsed = time.perf_counter() - t0
    ok = len(x) == 11 and err <= 1e-12 and elapsed < 1
    report("4 small-grid oracle", ok, f"sup diff {err:.2g} on 11 nodes after 3 steps, {elapsed:.2f}s")
    assert ok


@pytest.mark.slow
def test_monte_carlo_matches_stationary(report):
    t0 = time.perf_counter()
    cfg = RunConfig(DriftSpec.exact(1.0), h=0.001, T=1.0, paths=10_000, seed=42)
    xt = simulate_ensemble(cfg, keep_paths=False).terminal
    mean, sd = xt.mean(), xt.std(ddof=1)
    var = xt.var(ddof=1)
    elapsed = time.perf_counter() - t0
    mean_ok = abs(mean) <= 4 * sd / math.sqrt(len(xt))
    var_ok = abs(var - 0.5) <= 0.2 * 0.5
    ok = mean_ok and var_ok and elapsed < 30
    report("5 monte carlo vs stationary", ok,
           f"mean {mean:.4f} (bound {4 * sd / math.sqrt(len(xt)):.4f}, ok {mean_ok}), "
           f"variance {var:.4f} vs 0.5 +-20% (ok {var_ok}), {elapsed:.1f}s")
    assert ok


@pytest.mark.slow
def test_variance_monotone_in_gain(report):
    t0 = time.perf_counter()
    base = RunConfig(DriftSpec.exact(1.0), h=0.001, T=1.0, paths=5000, seed=42)
    v = [var for _, var in variance_sweep([1.0, 2.0, 3.0, 4.0], base)]
    elapsed = time.perf_counter() - t0
    ok = strictly_decreasing(v) and elapsed < 60
    report("6 variance decreasing in k", ok, f"variances {fmt(v)}, {elapsed:.1f}s")
    assert ok


def test_smoothed_density_converges(report):
    t0 = time.perf_counter()
    exact = StationaryDensity.laplace(1.0).on_grid(3.0, 1e-3)
    dists, seams, masses = [], [], []
    for N in (1, 10, 100):
        ref = StationaryDensity.smoothed(1.0, N)
        dists.append(sup_distance(ref.on_grid(3.0, 1e-3), exact, (-3, 3)))
        for c in (-ref.seam, ref.seam):
            inner = float(ref(c))
            outer = float(ref(np.nextafter(c, math.copysign(math.inf, c))))
            seams.append(abs(inner - outer) / inner)
        masses.append(abs(ref.integral(-math.inf, math.inf) - 1))
    phi0 = compute_phi0(1.0, 10_000)
    elapsed = time.perf_counter() - t0
    ok = (strictly_decreasing(dists) and max(seams) <= 1e-12 and max(masses) <= 1e-6
          and abs(phi0 - 1) <= 1e-3 and elapsed < 5)
    report("7 smoothed -> laplace", ok,
           f"sup distance {fmt(dists)}, max seam gap {max(seams):.2g}, max|mass-1| {max(masses):.2g}, "
           f"phi0(N=1e4) {phi0:.6f}, {elapsed:.2f}s")
    assert ok


@pytest.mark.slow
def test_generator_consistency(report):
    t0 = time.perf_counter()
    g, dg, d2g = gaussian_test_density(1.0)
    lap = laplace_test_density(1.0)[0]
    ref = generator_limit_reference(dg, d2g, 1.0, np.array([-1.0, 1.0]))
    gauss_err, lap_sup = [], []
    for h in (1e-2, 1e-3, 1e-4):
        dx = h / 10
        f = DensityGrid.from_function(g, 8.0, dx)
        est = generator_estimate(f, h, 1.0)
        gauss_err.append(max(abs(est[f.index_of(x)] - r) for x, r in zip((-1.0, 1.0), ref)))
        f = DensityGrid.from_function(lap, 8.0, dx)
        est = generator_estimate(f, h, 1.0)
        window = (np.abs(f.x) >= 0.5 - 1e-12) & (np.abs(f.x) <= 3 + 1e-12)
        lap_sup.append(np.max(np.abs(est[window])))
    elapsed = time.perf_counter() - t0
    ok = strictly_decreasing(gauss_err) and strictly_decreasing(lap_sup) and elapsed < 120
    report("8 generator consistency", ok,
           f"gaussian err at +-1 {fmt(gauss_err)}, laplace sup {fmt(lap_sup)}, {elapsed:.1f}s")
    assert ok


def test_fourier_identity(report):
    t0 = time.perf_counter()
    g = gaussian_test_density(0.25)[0]
    omegas = [0.0, 1.0, 5.0, 10.0]
    worst = []
    for dx in (1e-3, 5e-4):
        samples = identity_check(DensityGrid.from_function(g, 6.0, dx), 0.01, 1.0, omegas)
        worst.append(max(s.residual for s in samples))
    elapsed = time.perf_counter() - t0
    # the identity is exact on the grid, so both residuals sit at roundoff;
    # a zero second residual counts as an unbounded reduction
    ratio = math.inf if worst[1] == 0 else worst[0] / worst[1]
    ok = worst[0] <= 1e-6 and ratio >= 3.5 and elapsed < 5
    report("9 fourier identity", ok,
           f"max residual {worst[0]:.2g} -> {worst[1]:.2g} (ratio {ratio:.3g}, roundoff level), {elapsed:.2f}s")
    assert ok


def test_fourier_lhs_against_continuum(report):
    # supplementary: the transformed side itself converges at second order in dx
    from signdrift.density_recursion import shift_and_mask

    g = gaussian_test_density(0.25)[0]
    errs = []
    for dx in (1e-3, 5e-4):
        z = shift_and_mask(DensityGrid.from_function(g, 6.0, dx), 0.01, 1.0)
        errs.append(max(abs(fourier_of_density(z, w) - continuum_fz_transform(0.25, 0.01, w))
                        for w in (1.0, 5.0, 10.0)))
    ok = errs[0] / errs[1] >= 3.5
    report("9b fourier lhs vs continuum", ok, f"max error {errs[0]:.3g} -> {errs[1]:.3g} "
           f"(ratio {errs[0] / errs[1]:.2f})")
    assert ok


COMMANDS = {
    "simulate": ["--paths", "50", "--T", "0.2", "--h", "0.01", "--seed", "4"],
    "evolve-density": ["--h", "0.05", "--alpha", "0.2", "--snapshots", "1,3", "--L", "6", "--dx", "0.005"],
    "stationary": ["--kind", "smooth", "--N", "10", "--L", "3", "--dx", "0.01"],
    "generator-check": ["--h", "0.01"],
    "fourier-check": [],
    "variance-sweep": ["--k-values", "1,2", "--paths", "100", "--T", "0.2", "--h", "0.01"],
    "smooth-sweep": ["--N-values", "1,10", "--dx", "0.01"],
}


def test_cli_reproducible(tmp_path, report):
    bad = []
    ran = 0
    for name, flags in COMMANDS.items():
        outs = []
        for rep in ("a", "b"):
            out = tmp_path / name / rep
            assert run([name, "--out", str(out), *flags]) == 0
            outs.append(out)
        for csv in sorted(outs[0].glob("*.csv")):
            ran += 1
            if csv.read_bytes() != (outs[1] / csv.name).read_bytes():
                bad.append(f"{name}/{csv.name}")
    # compare consumes the outputs above
    st = tmp_path / "stationary" / "a" / "density.csv"
    for rep in ("a", "b"):
        assert run(["compare", "--out", str(tmp_path / "compare" / rep), "--a", str(st), "--ref", "smooth",
                    "--N", "10"]) == 0
    ran += 1
    if (tmp_path / "compare/a/compare.csv").read_bytes() != (tmp_path / "compare/b/compare.csv").read_bytes():
        bad.append("compare/compare.csv")
    ok = not bad
    report("10 cli reproducibility", ok, f"{ran} CSV files over {len(COMMANDS) + 1} subcommands, mismatches {bad}")
    assert ok
