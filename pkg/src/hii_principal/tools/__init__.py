"""Low-level kernels: exact scalars, integer lattices, input parsing, suite metrics."""
from .scalars import Monomial, Scalar, TorsionValue, render_decimal, render_scalar
from .lattice import integer_kernel, lattice_quotient, smith_normal_form
from .metrics import SuiteTracker, TrialOutcome

__all__ = [
    'Monomial',
    'Scalar',
    'TorsionValue',
    'render_decimal',
    'render_scalar',
    'integer_kernel',
    'lattice_quotient',
    'smith_normal_form',
    'SuiteTracker',
    'TrialOutcome',
]
