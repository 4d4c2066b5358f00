"""The one-step operator H_h, and (H_h f - f)/h as h shrinks.

For a smooth test density the finite-h quotient approaches
k sign(x) f' + f''/2 at first order in h. The Laplace density is (almost) a
fixed point, so its quotient stays near zero away from the origin.
"""
import numpy as np

from signdrift import DensityGrid
from signdrift.generator import (
    gaussian_test_density,
    generator_estimate,
    generator_limit_reference,
    laplace_test_density,
)

g, dg, d2g = gaussian_test_density(1.0)
lap = laplace_test_density(1.0)[0]
limit = float(generator_limit_reference(dg, d2g, 1.0, 1.0))
print(f"limit at x=1 for N(0,1): {limit:.6f}")

for h in (1e-2, 1e-3, 1e-4):
    f = DensityGrid.from_function(g, 8.0, h / 10)
    est = generator_estimate(f, h, 1.0)[f.index_of(1.0)]
    f = DensityGrid.from_function(lap, 8.0, h / 10)
    lest = generator_estimate(f, h, 1.0)
    band = (np.abs(f.x) >= 0.5) & (np.abs(f.x) <= 3)
    print(f"h={h:g}: gaussian estimate {est:.6f} (error {abs(est - limit):.2e}), "
          f"laplace sup {np.max(np.abs(lest[band])):.2e}")
