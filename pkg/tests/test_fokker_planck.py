import math

import numpy as np
import pytest
from scipy import integrate

from signdrift.errors import QuadratureError, ValidationError
from signdrift.fokker_planck import (
    StationaryDensity,
    compute_phi0,
    laplace_density,
    smoothed_density,
    stationary_residual,
)
from signdrift.grid import DensityGrid
from signdrift.quadrature import adaptive_simpson

from .oracles import gaussian, simpson_fixed


def test_adaptive_simpson_exact_for_cubics():
    assert adaptive_simpson(lambda x: 4 * x**3 - x + 2, -1.0, 3.0) == pytest.approx(84.0, abs=1e-12)


def test_adaptive_simpson_smooth_integrand():
    assert adaptive_simpson(math.exp, 0.0, 1.0, 1e-12) == pytest.approx(math.e - 1, abs=1e-12)
    assert adaptive_simpson(math.sin, math.pi, 0.0) == pytest.approx(-2.0, abs=1e-10)


def test_adaptive_simpson_gives_up():
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda x: math.sqrt(abs(x)), -1.0, 1.0, 1e-15, max_intervals=50)


@pytest.mark.parametrize("k", [0.5, 1.0, 3.0])
def test_laplace_values(k):
    assert laplace_density(0.0, k) == k
    assert laplace_density(1 / (2 * k), k) == pytest.approx(k / math.e)
    assert laplace_density(-1 / (2 * k), k) == pytest.approx(k / math.e)


def test_laplace_trapezoid_mass():
    x = np.linspace(-10, 10, 20001)
    assert np.trapezoid(laplace_density(x, 1.0), x) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_laplace_second_moment(k):
    L = 10.0
    x = np.linspace(-L, L, 200001)
    f = laplace_density(x, k)
    assert np.trapezoid(f, x) == pytest.approx(1.0, abs=1e-6)
    assert np.trapezoid(x * x * f, x) == pytest.approx(1 / (2 * k * k), rel=1e-4)
    assert StationaryDensity.laplace(k).variance() == 1 / (2 * k * k)


def test_phi0_large_N_tends_to_k():
    assert compute_phi0(1.0, 10_000) == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("k, N", [(1.0, 1), (2.0, 3), (0.5, 20)])
def test_phi0_against_fixed_step_simpson(k, N):
    integrand = lambda x: np.exp(-1.5 * k * N * x**2 + 0.25 * k * N**3 * x**4)
    oracle = 1.0 / (2.0 * simpson_fixed(integrand, 0.0, 1.0 / N, 10**6) + math.exp(-1.25 * k / N) / k)
    assert compute_phi0(k, N) == pytest.approx(oracle, abs=1e-8)


@pytest.mark.parametrize("k", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("N", [1, 2, 10, 1000])
def test_phi0_positive(k, N):
    assert compute_phi0(k, N) > 0


def test_phi0_quadrature_failure_surfaces():
    with pytest.raises(QuadratureError):
        compute_phi0(1.0, 1, quad_tol=1e-15, max_intervals=5)


@pytest.mark.parametrize("k, N", [(1.0, 1), (1.0, 10), (2.5, 4), (1.0, 10_000)])
def test_smoothed_density_seams_and_symmetry(k, N):
    phi0 = compute_phi0(k, N)
    c = 1.0 / N
    inner = phi0 * math.exp(-1.25 * k / N)
    d = phi0 * math.exp(0.75 * k / N)
    assert d * math.exp(-2 * k * c) == pytest.approx(inner, rel=1e-14)
    right = smoothed_density(np.nextafter(c, 1.0), k, N, phi0)
    assert abs(right - smoothed_density(c, k, N, phi0)) <= 1e-12 * inner
    assert smoothed_density(0.0, k, N, phi0) == phi0
    x = np.linspace(0, 3, 301)
    np.testing.assert_array_equal(smoothed_density(x, k, N, phi0), smoothed_density(-x, k, N, phi0))


@pytest.mark.parametrize("k, N", [(1.0, 1), (1.0, 10), (1.0, 100), (3.0, 2)])
def test_smoothed_density_total_mass(k, N):
    ref = StationaryDensity.smoothed(k, N)
    c = 1.0 / N
    pieces = [(-np.inf, -c), (-c, c), (c, np.inf)]
    total = sum(integrate.quad(ref, a, b, epsabs=1e-13, epsrel=1e-13)[0] for a, b in pieces)
    assert total == pytest.approx(1.0, abs=1e-6)
    assert ref.integral(-np.inf, np.inf) == pytest.approx(1.0, abs=1e-9)


def test_stationary_integral_and_variance_against_scipy():
    ref = StationaryDensity.smoothed(1.5, 3)
    for a, b in [(-2.0, -0.1), (-0.2, 0.25), (0.1, 0.5), (0.4, 3.0)]:
        expect = integrate.quad(ref, a, b, points=[-1 / 3, 1 / 3], epsabs=1e-13)[0]
        assert ref.integral(a, b) == pytest.approx(expect, abs=1e-10)
    var = integrate.quad(lambda x: x * x * ref(x), -np.inf, np.inf, points=None)[0]
    assert ref.variance() == pytest.approx(var, rel=1e-8)
    lap = StationaryDensity.laplace(2.0)
    assert lap.integral(-0.3, 0.7) == pytest.approx(integrate.quad(lap, -0.3, 0.7, points=[0])[0], abs=1e-12)


def test_smoothed_converges_to_laplace():
    x = np.linspace(-3, 3, 6001)
    phi = laplace_density(x, 1.0)
    dists = [np.max(np.abs(StationaryDensity.smoothed(1.0, N)(x) - phi)) for N in (1, 10, 100)]
    assert dists[0] > dists[1] > dists[2]


def test_residual_of_laplace():
    f = DensityGrid.from_function(lambda x: laplace_density(x, 1.0), 4.0, 1e-3, mass_tol=None)
    x, r = stationary_residual(f, 1.0)
    window = np.abs(x) <= 3
    assert np.min(np.abs(x)) >= 0.1 - 1e-12
    coarse = np.max(np.abs(r[window]))
    assert coarse <= 1e-4
    f2 = DensityGrid.from_function(lambda x: laplace_density(x, 1.0), 4.0, 5e-4, mass_tol=None)
    x2, r2 = stationary_residual(f2, 1.0)
    fine = np.max(np.abs(r2[np.abs(x2) <= 3]))
    assert coarse / fine >= 3.5


def test_residual_of_gaussian():
    f = DensityGrid.from_function(gaussian(1.0), 8.0, 1e-3, mass_tol=None)
    x, r = stationary_residual(f, 1.0)
    i = np.argmin(np.abs(x - 1.0))
    assert r[i] == pytest.approx(-gaussian(1.0)(1.0), abs=1e-6)
    assert r[i] == pytest.approx(-0.2420, abs=1e-4)


def test_residual_of_constant_and_tiny_grid():
    x, r = stationary_residual(DensityGrid(1.0, 0.1, np.full(21, 0.5), mass_tol=None), 2.0)
    np.testing.assert_allclose(r, 0.0, atol=1e-12)
    with pytest.raises(ValidationError):
        stationary_residual(DensityGrid(0.1, 0.1, np.full(3, 5.0), mass_tol=None), 1.0)
