"""Candidate densities for ``dx = -k sign(x) dt + dB`` from three routes.

Euler-Maruyama ensembles, grid propagation of the Euler-Maruyama density, and
closed-form stationary Fokker-Planck solutions for the exact and cubic-smoothed
sign drift.
"""

from .analysis import histogram_vs_density, log_density_distance, sup_distance, variance_sweep
from .density_recursion import (
    evolve,
    gaussian_convolve,
    initial_density,
    recursion_step,
    schedule_steps,
    shift_and_mask,
)
from .drift import DriftKind, DriftSpec, drift_value, sign, smoothed_sign
from .em_simulator import (
    Histogram,
    RunConfig,
    TrajectoryEnsemble,
    em_step,
    mean_path,
    simulate_ensemble,
    smoothed_step_size,
    terminal_histogram,
)
from .errors import MassInvariantError, NumericalError, QuadratureError, ValidationError
from .fokker_planck import (
    StationaryDensity,
    compute_phi0,
    laplace_density,
    smoothed_density,
    stationary_residual,
)
from .generator import apply_Hh, generator_estimate, generator_limit_reference
from .grid import DensityGrid
from .transforms import TransformSample, fourier_of_density, identity_check, laplace_halfline_transform

__version__ = "0.1.0"
BUILD_ID = f"signdrift {__version__}"
