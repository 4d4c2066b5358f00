"""Check the transform identity for the shift step.

For an even density f, moving each half toward the origin by hk turns the
Fourier transform into cos(w hk) F(w) - 2 sin(w hk) Im G(w), where G is the
transform over the half-line x > 0. Both sides are evaluated on one grid, and
they agree to roundoff.
"""
from signdrift import DensityGrid
from signdrift.generator import gaussian_test_density
from signdrift.transforms import identity_check

f = DensityGrid.from_function(gaussian_test_density(0.25)[0], 6.0, 1e-3)
for s in identity_check(f, h=0.01, k=1.0, omegas=[0, 1, 5, 10, 20]):
    print(f"w={s.omega:5.1f}  lhs={s.lhs.real:+.12f}  rhs={s.rhs:+.12f}  residual={s.residual:.1e}")
