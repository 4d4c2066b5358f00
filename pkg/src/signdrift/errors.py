"""Exception hierarchy.

Validation problems (bad arguments, violated preconditions) derive from
``ValueError``; numerical failures (a quadrature that will not converge, a
density that lost mass) derive from ``RuntimeError``. The CLI maps the two
families to exit codes 1 and 2.
"""


class ValidationError(ValueError):
    pass


class NumericalError(RuntimeError):
    pass


class QuadratureError(NumericalError):
    pass


class MassInvariantError(NumericalError):
    pass
